#include "cachelab/converse.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "cachelab/combinatorics.hpp"
#include "cachelab/error.hpp"
#include "cachelab/schemes.hpp"

namespace cachelab::converse {

std::vector<ClassId> demand_from_circular(const FdsStructure& structure, const Permutation& pi) {
  const int users = structure.users();
  if (pi.size() != users) throw std::invalid_argument("permutation length must equal K");
  std::vector<ClassId> classes;
  classes.reserve(static_cast<std::size_t>(users));
  for (int k = 1; k <= users; ++k) {
    const int position = pi.position_of(k);
    UserSet members = UserSet::of({k});
    for (int step = 1; step < structure.alpha(); ++step) {
      members = members.with(pi(mod1(position + step, users)));
    }
    classes.push_back(members);
  }
  return classes;
}

std::uint64_t DemandFamily::bound_count() const {
  std::uint64_t total = 0;
  for (const auto& e : entries) total += e.shifts.size();
  return total;
}

std::uint64_t family_size(const FdsStructure& structure) {
  const BigInt size =
      factorial(structure.users() - 1) * power(structure.files_per_class(), structure.users());
  if (size > std::numeric_limits<std::uint64_t>::max()) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return size.convert_to<std::uint64_t>();
}

DemandFamily demand_family(const FdsStructure& structure, std::uint64_t cap) {
  const std::uint64_t size = family_size(structure);
  if (size > cap) throw CapExceeded("circular demand family", size, cap);

  const int users = structure.users();
  const int files = structure.files_per_class();
  DemandFamily family;
  family.entries.reserve(static_cast<std::size_t>(size));
  for (const Permutation& pi : circular_representatives(users)) {
    const auto classes = demand_from_circular(structure, pi);
    const auto shifts = circular_shifts(pi);
    std::vector<int> f(static_cast<std::size_t>(users), 1);
    while (true) {
      family.entries.push_back(FamilyEntry{DemandInstance{classes, f, pi}, shifts});
      // Odometer over [1..F]^K, last user fastest.
      int k = users - 1;
      while (k >= 0 && f[static_cast<std::size_t>(k)] == files) {
        f[static_cast<std::size_t>(k)] = 1;
        --k;
      }
      if (k < 0) break;
      ++f[static_cast<std::size_t>(k)];
    }
  }
  return family;
}

Rational per_demand_bound(const Placement& placement, const DemandInstance& demand,
                          const Permutation& order) {
  if (order.size() != demand.users()) {
    throw std::invalid_argument("user ordering has the wrong length");
  }
  Rational total = 0;
  std::uint32_t prefix = 0;
  for (int k = 1; k <= order.size(); ++k) {
    const int user = order(k);
    prefix |= 1u << (user - 1);
    const FileId file = demand.requested(user);
    const std::uint32_t free = file.cls.mask() & ~prefix;
    for (std::uint32_t t = free;; t = (t - 1) & free) {
      total += placement.size(SubfileId{file, UserSet::from_mask(t)});
      if (t == 0) break;
    }
  }
  return total;
}

BigInt a_ell(int users, int alpha, int files_per_class, int t_prime, int ell) {
  if (t_prime < 0 || t_prime > alpha - 1 || ell < t_prime || ell > alpha - 1) {
    throw std::invalid_argument("a_ell needs t' in [0..alpha-1] and ell in [t'..alpha-1]");
  }
  const BigInt choose = (t_prime == 0 && ell == 0) ? BigInt(1) : big_binomial(ell - 1, t_prime - 1);
  return factorial(t_prime) * factorial(alpha - 1 - t_prime) * factorial(users - alpha) * choose *
         power(files_per_class, users - 1);
}

BigInt appearance_count(int users, int alpha, int files_per_class, int t_prime) {
  if (t_prime < 0 || t_prime > alpha) throw std::invalid_argument("t' must lie in [0..alpha]");
  BigInt sum = 0;
  for (int ell = t_prime; ell <= alpha - 1; ++ell) {
    sum += a_ell(users, alpha, files_per_class, t_prime, ell) * (users - ell);
  }
  return (alpha - t_prime) * sum;
}

Rational f_coeff(int users, int alpha, int t_prime) {
  if (t_prime < 0 || t_prime > alpha) throw std::invalid_argument("t' must lie in [0..alpha]");
  const BigInt numerator = big_binomial(alpha, t_prime + 1) +
                           BigInt(users - alpha) * big_binomial(alpha - 1, t_prime);
  return Rational(numerator, big_binomial(alpha, t_prime));
}

Rational f_coeff_from_counts(int users, int alpha, int files_per_class, int t_prime) {
  const BigInt library = BigInt(files_per_class) * big_binomial(users, alpha);
  const BigInt bounds = power(files_per_class, users) * factorial(users);
  return Rational(library * appearance_count(users, alpha, files_per_class, t_prime), bounds);
}

namespace {

void check_memory(int users, int alpha, const Rational& m) {
  if (alpha < 1 || alpha > users) throw std::invalid_argument("alpha must lie in [1..K]");
  if (m < 0 || m > alpha) {
    throw std::invalid_argument("LP memory " + to_string(m) + " outside [0.." +
                                std::to_string(alpha) + "]");
  }
}

Rational objective(int users, int alpha, const std::vector<Rational>& x) {
  Rational value = 0;
  for (int t = 0; t <= alpha; ++t) value += f_coeff(users, alpha, t) * x[static_cast<std::size_t>(t)];
  return value;
}

}  // namespace

LpSolution solve_lp_by_vertices(int users, int alpha, const Rational& m) {
  check_memory(users, alpha, m);
  LpSolution best;
  bool found = false;
  const auto consider = [&](std::vector<Rational> x) {
    const Rational value = objective(users, alpha, x);
    if (!found || value < best.value) {
      found = true;
      best.x = std::move(x);
      best.value = value;
    }
  };
  const std::size_t width = static_cast<std::size_t>(alpha + 1);
  for (int i = 0; i <= alpha; ++i) {
    if (i > m) break;
    std::vector<Rational> x(width, Rational(0));
    x[static_cast<std::size_t>(i)] = 1;
    consider(std::move(x));
  }
  for (int i = 0; i <= alpha; ++i) {
    for (int j = i + 1; j <= alpha; ++j) {
      if (!(i < m && m < j)) continue;
      std::vector<Rational> x(width, Rational(0));
      x[static_cast<std::size_t>(i)] = (Rational(j) - m) / (j - i);
      x[static_cast<std::size_t>(j)] = (m - i) / (j - i);
      consider(std::move(x));
    }
  }
  return best;
}

LpSolution solve_lp(int users, int alpha, const Rational& m) {
  check_memory(users, alpha, m);
  // Convexity and strict decrease of f put the optimum on the two integer
  // atoms bracketing m.
  const BigInt floor_m = boost::multiprecision::numerator(m) / boost::multiprecision::denominator(m);
  const int low = floor_m.convert_to<int>();
  LpSolution solution;
  solution.x.assign(static_cast<std::size_t>(alpha + 1), Rational(0));
  if (low == alpha) {
    solution.x[static_cast<std::size_t>(alpha)] = 1;
  } else {
    const Rational theta = m - low;
    solution.x[static_cast<std::size_t>(low)] = 1 - theta;
    solution.x[static_cast<std::size_t>(low + 1)] += theta;
  }
  solution.value = objective(users, alpha, solution.x);

  const LpSolution check = solve_lp_by_vertices(users, alpha, m);
  if (check.value != solution.value) {
    throw std::logic_error("LP closed form " + to_string(solution.value) +
                           " disagrees with vertex enumeration " + to_string(check.value));
  }
  return solution;
}

BoundCurve::BoundCurve(std::vector<CornerPoint> corners) : corners_(std::move(corners)) {
  if (corners_.empty()) throw std::invalid_argument("a curve needs at least one corner");
  for (std::size_t i = 1; i < corners_.size(); ++i) {
    if (!(corners_[i - 1].memory < corners_[i].memory)) {
      throw std::invalid_argument("corner memories must be strictly ascending");
    }
  }
}

Rational BoundCurve::at(const Rational& memory) const {
  if (memory < 0) throw std::invalid_argument("negative memory");
  if (memory <= corners_.front().memory) return corners_.front().load;
  for (std::size_t i = 1; i < corners_.size(); ++i) {
    const CornerPoint& a = corners_[i - 1];
    const CornerPoint& b = corners_[i];
    if (memory <= b.memory) {
      const Rational theta = (memory - a.memory) / (b.memory - a.memory);
      return a.load + theta * (b.load - a.load);
    }
  }
  return corners_.back().load;
}

bool BoundCurve::is_convex_nonincreasing() const {
  for (std::size_t i = 1; i < corners_.size(); ++i) {
    if (corners_[i].load > corners_[i - 1].load) return false;
  }
  for (std::size_t i = 2; i < corners_.size(); ++i) {
    const Rational left = (corners_[i - 1].load - corners_[i - 2].load) /
                          (corners_[i - 1].memory - corners_[i - 2].memory);
    const Rational right =
        (corners_[i].load - corners_[i - 1].load) / (corners_[i].memory - corners_[i - 1].memory);
    if (right < left) return false;
  }
  return true;
}

BoundCurve bound_curve(const FdsStructure& structure) {
  const int users = structure.users();
  const int alpha = structure.alpha();
  std::vector<CornerPoint> corners;
  for (int t = 0; t <= alpha; ++t) {
    corners.push_back(CornerPoint{make_rational(t * structure.library_size(), users),
                                  f_coeff(users, alpha, t)});
  }
  return BoundCurve(std::move(corners));
}

Rational closed_form_load(int users, int alpha, const Rational& gamma) {
  if (alpha < 1 || alpha > users) throw std::invalid_argument("alpha must lie in [1..K]");
  if (gamma < 0 || gamma > make_rational(alpha, users)) {
    throw std::invalid_argument("gamma " + to_string(gamma) + " outside [0, alpha/K]");
  }
  const Rational gamma_alpha = gamma * users / alpha;
  return users * (1 - gamma_alpha) * ((users - alpha) * gamma + 1) / (users * gamma + 1);
}

BoundCurve man_curve(int users, std::int64_t library_size) {
  if (users < 1) throw std::invalid_argument("K must be positive");
  std::vector<CornerPoint> corners;
  for (int t = 0; t <= users; ++t) {
    corners.push_back(
        CornerPoint{make_rational(t * library_size, users), make_rational(users - t, 1 + t)});
  }
  return BoundCurve(std::move(corners));
}

std::vector<RatioRow> ratio_report(int users, int alpha) {
  if (alpha < 2 || alpha > users - 1) {
    throw std::invalid_argument("ratio report needs alpha in [2..K-1]");
  }
  std::vector<RatioRow> rows;
  for (int t = 0; t <= alpha - 1; ++t) {
    RatioRow row;
    row.t = t;
    row.lower_bound = f_coeff(users, alpha, t);
    row.man_load = make_rational(users - t, 1 + t);
    row.ratio = row.lower_bound / row.man_load;
    row.simplified = make_rational(static_cast<std::int64_t>(alpha - t) * (users + (users - alpha) * t),
                                   static_cast<std::int64_t>(alpha) * (users - t));
    rows.push_back(std::move(row));
  }
  return rows;
}

AggregateCheck aggregate_check(const FdsStructure& structure, std::span<const Rational> profile,
                               std::uint64_t cap) {
  const Placement placement = schemes::profile_placement(structure, profile);
  const DemandFamily family = demand_family(structure, cap);
  AggregateCheck check;
  Rational sum = 0;
  for (const auto& entry : family.entries) {
    for (const auto& u : entry.shifts) {
      sum += per_demand_bound(placement, entry.demand, u);
      ++check.bounds;
    }
  }
  check.average_bound = sum / check.bounds;
  check.lp_objective = 0;
  for (int t = 0; t <= structure.alpha(); ++t) {
    check.lp_objective +=
        f_coeff(structure.users(), structure.alpha(), t) * profile[static_cast<std::size_t>(t)];
  }
  return check;
}

}  // namespace cachelab::converse
