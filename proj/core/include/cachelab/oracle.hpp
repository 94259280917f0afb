#pragma once

// Brute-force cross-checks for the counting claims behind the converse.
// Nothing here reuses the converse's counting code: demands, rotations and
// acyclic-set expansions are regenerated from scratch.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cachelab/fds.hpp"
#include "cachelab/index_coding.hpp"
#include "cachelab/placement.hpp"
#include "cachelab/rational.hpp"

namespace cachelab::oracle {

// kEqual: the two values must coincide. kAtLeast: brute >= formula.
enum class Relation { kEqual, kAtLeast };

struct CountReport {
  std::string subject;
  Rational formula_value;
  Rational brute_value;
  Relation relation = Relation::kEqual;
  bool match = false;
};

CountReport make_report(std::string subject, Rational formula_value, Rational brute_value,
                        Relation relation = Relation::kEqual);

nlohmann::json to_json(const CountReport& report);

// Number of the K rotations of pi in which k1 comes before k2, by enumeration.
int rotation_order_count(const Permutation& pi, int k1, int k2);

// K - ell with ell = (pi^{-1}(k2) - pi^{-1}(k1)) mod K.
int rotation_order_formula(const Permutation& pi, int k1, int k2);

inline constexpr std::uint64_t kDefaultOracleCap = 1'000'000;

// Occurrences of every subfile W_{f,S,T} (T subset of S) across all
// (demand, rotation) bounds of the circular family, zero entries included.
std::map<SubfileId, BigInt> appearance_table(const FdsStructure& structure,
                                             std::uint64_t cap = kDefaultOracleCap);

BigInt count_appearances(const FdsStructure& structure, const SubfileId& subfile,
                         std::uint64_t cap = kDefaultOracleCap);

// True iff every subfile with |T| = t' is counted the same number of times.
bool subfile_symmetry_check(const FdsStructure& structure, int t_prime,
                            std::uint64_t cap = kDefaultOracleCap);

// Exhaustive MAIS of the demand's side-information graph against the best
// rotation-induced acyclic set (all orderings when the demand has no
// generating permutation). Matches when every constructed set is acyclic and
// MAIS >= the construction.
CountReport mais_vs_construction(const Placement& placement, const DemandInstance& demand,
                                 std::size_t mais_cap = index_coding::kDefaultMaisCap);

struct VerificationOptions {
  std::uint64_t family_cap = kDefaultOracleCap;
  std::size_t mais_cap = index_coding::kDefaultMaisCap;
  int rotation_order_max_users = 7;
};

struct VerificationReport {
  int users = 0;
  int alpha = 0;
  int files_per_class = 0;
  std::vector<CountReport> records;

  bool passed() const;
  nlohmann::json to_json() const;
};

// Runs every oracle against the formulas for one structure. Throws
// CapExceeded when an enumeration exceeds its cap.
VerificationReport run_verification(const FdsStructure& structure,
                                    const VerificationOptions& options = {});

}  // namespace cachelab::oracle
