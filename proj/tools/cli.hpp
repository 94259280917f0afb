#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cachelab::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kInvalidInput = 2,
  kCapExceeded = 3,
};

// Runs one `cachelab` invocation. `args` excludes the program name. Results go
// to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cachelab::cli
