#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cachelab {

// Raised when an exhaustive enumeration would visit more items than the
// configured cap allows. `required()` is the size the enumeration needs.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::string what_enumeration, std::uint64_t required, std::uint64_t cap);

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

}  // namespace cachelab
