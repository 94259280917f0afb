#pragma once

// Lower bound on the worst-case load under uncoded selfish placement:
// the circular demand family, subfile appearance counting, the replication
// coefficients f(t'), the two-constraint LP over replication profiles and the
// resulting piecewise-linear memory/load curve.
//
// Everything is exact. Binomials follow the zero convention except for the
// single term binom(-1, -1) inside a_ell, which is taken as 1; without it the
// uncached coefficient f(0) would come out as 0 instead of K.

#include <cstdint>
#include <span>
#include <vector>

#include "cachelab/fds.hpp"
#include "cachelab/placement.hpp"
#include "cachelab/rational.hpp"

namespace cachelab::converse {

// D_k = {k and the alpha - 1 users that follow k around the cycle pi}.
std::vector<ClassId> demand_from_circular(const FdsStructure& structure, const Permutation& pi);

struct FamilyEntry {
  DemandInstance demand;           // provenance holds the generating pi
  std::vector<Permutation> shifts; // the K rotations of pi
};

struct DemandFamily {
  std::vector<FamilyEntry> entries;

  std::uint64_t bound_count() const;
};

inline constexpr std::uint64_t kDefaultFamilyCap = 1'000'000;

// (K - 1)! * F^K, saturating at UINT64_MAX.
std::uint64_t family_size(const FdsStructure& structure);

// One demand per (circular representative pi, file vector f), pi-major and f
// in lexicographic order. Throws CapExceeded when family_size exceeds `cap`.
DemandFamily demand_family(const FdsStructure& structure,
                           std::uint64_t cap = kDefaultFamilyCap);

// Total size of the acyclic set induced by the user ordering `order`, by
// direct summation over the placement.
Rational per_demand_bound(const Placement& placement, const DemandInstance& demand,
                          const Permutation& order);

// Number of family demands in which a fixed uncached user requests a fixed
// file whose cached-by set T (|T| = t') ends `ell` places after it.
// Requires t' in [0..alpha-1] and ell in [t'..alpha-1].
BigInt a_ell(int users, int alpha, int files_per_class, int t_prime, int ell);

// Times one subfile with |T| = t' is counted across all bounds of the family;
// 0 for t' = alpha.
BigInt appearance_count(int users, int alpha, int files_per_class, int t_prime);

// [binom(alpha, t'+1) + (K - alpha) binom(alpha-1, t')] / binom(alpha, t').
Rational f_coeff(int users, int alpha, int t_prime);

// The same coefficient from its counting definition,
// N (alpha - t') / (F^K K!) * sum_ell a_ell (K - ell).
Rational f_coeff_from_counts(int users, int alpha, int files_per_class, int t_prime);

struct LpSolution {
  std::vector<Rational> x;  // indexed by t' in [0..alpha]
  Rational value;
};

// min sum f(t') x_t' s.t. sum x = 1, sum t' x <= m, x >= 0, for m in [0..alpha].
// Uses the convex closed form and cross-checks it against vertex enumeration;
// a disagreement throws std::logic_error.
LpSolution solve_lp(int users, int alpha, const Rational& m);

// Vertex enumeration of the same LP: single atoms i <= m and pairs i < m < j
// with the memory constraint tight.
LpSolution solve_lp_by_vertices(int users, int alpha, const Rational& m);

struct CornerPoint {
  Rational memory;
  Rational load;

  bool operator==(const CornerPoint&) const = default;
};

// Piecewise-linear memory/load curve given by its corner points, ascending in
// memory. Past the last corner the curve stays at the last load.
class BoundCurve {
 public:
  explicit BoundCurve(std::vector<CornerPoint> corners);

  const std::vector<CornerPoint>& corners() const { return corners_; }
  // Memory-sharing interpolation. Throws std::invalid_argument for memory < 0.
  Rational at(const Rational& memory) const;
  bool is_convex_nonincreasing() const;

 private:
  std::vector<CornerPoint> corners_;
};

// Corners (t N / K, f(t)) for t in [0..alpha].
BoundCurve bound_curve(const FdsStructure& structure);

// K (1 - gamma_alpha) [(K - alpha) gamma + 1] / (K gamma + 1) with
// gamma_alpha = K gamma / alpha, for gamma in [0, alpha / K].
Rational closed_form_load(int users, int alpha, const Rational& gamma);

// Unselfish MAN corners (t N / K, (K - t) / (1 + t)) for t in [0..K].
BoundCurve man_curve(int users, std::int64_t library_size);

struct RatioRow {
  int t = 0;
  Rational lower_bound;
  Rational man_load;
  Rational ratio;
  // (alpha - t)(K + (K - alpha) t) / (alpha (K - t)), computed separately.
  Rational simplified;
};

// Rows for t in [0..alpha-1]. Throws std::invalid_argument unless alpha is in [2..K-1].
std::vector<RatioRow> ratio_report(int users, int alpha);

struct AggregateCheck {
  Rational average_bound;  // mean of per_demand_bound over (demand, shift) pairs
  Rational lp_objective;   // sum f(t') x_t'
  std::uint64_t bounds = 0;
};

// Averages the family's bounds under profile_placement(x) and evaluates the
// LP objective at x; the two agree exactly.
AggregateCheck aggregate_check(const FdsStructure& structure, std::span<const Rational> profile,
                               std::uint64_t cap = kDefaultFamilyCap);

}  // namespace cachelab::converse
