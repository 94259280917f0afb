#include "cachelab/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cachelab/converse.hpp"
#include "cachelab/error.hpp"
#include "cachelab/schemes.hpp"

namespace cachelab::oracle {

CountReport make_report(std::string subject, Rational formula_value, Rational brute_value,
                        Relation relation) {
  CountReport report;
  report.subject = std::move(subject);
  report.relation = relation;
  report.match = relation == Relation::kEqual ? formula_value == brute_value
                                              : brute_value >= formula_value;
  report.formula_value = std::move(formula_value);
  report.brute_value = std::move(brute_value);
  return report;
}

nlohmann::json to_json(const CountReport& report) {
  return nlohmann::json{
      {"subject", report.subject},
      {"formula_value", to_string(report.formula_value)},
      {"brute_value", to_string(report.brute_value)},
      {"relation", report.relation == Relation::kEqual ? "equal" : "at_least"},
      {"match", report.match},
  };
}

int rotation_order_count(const Permutation& pi, int k1, int k2) {
  const int n = pi.size();
  if (k1 == k2 || k1 < 1 || k2 < 1 || k1 > n || k2 > n) {
    throw std::invalid_argument("rotation order needs two distinct users in [1..K]");
  }
  const auto& image = pi.image();
  int count = 0;
  for (int shift = 0; shift < n; ++shift) {
    std::vector<int> rotated(image.begin() + shift, image.end());
    rotated.insert(rotated.end(), image.begin(), image.begin() + shift);
    const auto p1 = std::find(rotated.begin(), rotated.end(), k1);
    const auto p2 = std::find(rotated.begin(), rotated.end(), k2);
    if (p1 < p2) ++count;
  }
  return count;
}

int rotation_order_formula(const Permutation& pi, int k1, int k2) {
  const int n = pi.size();
  const int ell = ((pi.position_of(k2) - pi.position_of(k1)) % n + n) % n;
  return n - ell;
}

namespace {

std::uint64_t brute_family_size(const FdsStructure& structure) {
  BigInt size = 1;
  for (int i = 2; i < structure.users(); ++i) size *= i;
  for (int i = 0; i < structure.users(); ++i) size *= structure.files_per_class();
  if (size > std::numeric_limits<std::uint64_t>::max()) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return size.convert_to<std::uint64_t>();
}

// Every permutation of [1..K] that starts with 1, found by filtering S_K.
std::vector<std::vector<int>> cycle_starts_at_one(int users) {
  std::vector<int> p(static_cast<std::size_t>(users));
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    if (p.front() == 1) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

std::map<SubfileId, BigInt> appearance_table(const FdsStructure& structure, std::uint64_t cap) {
  const std::uint64_t size = brute_family_size(structure);
  if (size > cap) throw CapExceeded("appearance enumeration", size, cap);

  const int users = structure.users();
  const int alpha = structure.alpha();
  const int files = structure.files_per_class();

  std::map<SubfileId, std::uint64_t> counts;
  for (const FileId& file : all_files(structure)) {
    for (UserSet t : all_subsets(file.cls)) counts[SubfileId{file, t}] = 0;
  }

  for (const auto& cycle : cycle_starts_at_one(users)) {
    // Class of user k: k followed by the next alpha - 1 users on the cycle.
    std::vector<std::uint32_t> wanted(static_cast<std::size_t>(users), 0);
    for (int pos = 0; pos < users; ++pos) {
      std::uint32_t mask = 0;
      for (int step = 0; step < alpha; ++step) {
        mask |= 1u << (cycle[static_cast<std::size_t>((pos + step) % users)] - 1);
      }
      wanted[static_cast<std::size_t>(cycle[static_cast<std::size_t>(pos)] - 1)] = mask;
    }

    std::vector<int> f(static_cast<std::size_t>(users), 1);
    for (bool more = true; more;) {
      for (int shift = 0; shift < users; ++shift) {
        std::uint32_t placed = 0;
        for (int pos = 0; pos < users; ++pos) {
          const int user = cycle[static_cast<std::size_t>((pos + shift) % users)];
          placed |= 1u << (user - 1);
          const std::uint32_t cls = wanted[static_cast<std::size_t>(user - 1)];
          const std::uint32_t open = cls & ~placed;
          const FileId file{f[static_cast<std::size_t>(user - 1)], UserSet::from_mask(cls)};
          for (std::uint32_t t = open;; t = (t - 1) & open) {
            ++counts[SubfileId{file, UserSet::from_mask(t)}];
            if (t == 0) break;
          }
        }
      }
      // Next file vector, first user fastest.
      more = false;
      for (int k = 0; k < users; ++k) {
        if (f[static_cast<std::size_t>(k)] < files) {
          ++f[static_cast<std::size_t>(k)];
          more = true;
          break;
        }
        f[static_cast<std::size_t>(k)] = 1;
      }
    }
  }

  std::map<SubfileId, BigInt> out;
  for (const auto& [subfile, count] : counts) out.emplace(subfile, BigInt(count));
  return out;
}

BigInt count_appearances(const FdsStructure& structure, const SubfileId& subfile,
                         std::uint64_t cap) {
  const auto table = appearance_table(structure, cap);
  const auto it = table.find(subfile);
  if (it == table.end()) {
    throw std::invalid_argument("subfile " + subfile.to_string() + " is not part of the library");
  }
  return it->second;
}

bool subfile_symmetry_check(const FdsStructure& structure, int t_prime, std::uint64_t cap) {
  const auto table = appearance_table(structure, cap);
  bool seen = false;
  BigInt common = 0;
  for (const auto& [subfile, count] : table) {
    if (subfile.cached_by.size() != t_prime) continue;
    if (!seen) {
      seen = true;
      common = count;
    } else if (count != common) {
      return false;
    }
  }
  return true;
}

CountReport mais_vs_construction(const Placement& placement, const DemandInstance& demand,
                                 std::size_t mais_cap) {
  const auto graph = index_coding::build_graph(placement, demand);
  const auto best = index_coding::mais(graph, mais_cap);

  std::vector<Permutation> orders;
  if (demand.provenance) {
    orders = circular_shifts(*demand.provenance);
  } else {
    std::vector<int> p(static_cast<std::size_t>(demand.users()));
    std::iota(p.begin(), p.end(), 1);
    do {
      orders.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }

  Rational construction = 0;
  bool all_acyclic = true;
  for (const auto& order : orders) {
    const auto set = graph.indices_of(index_coding::ordered_acyclic_set(demand, order));
    all_acyclic = all_acyclic && index_coding::is_acyclic(graph, set);
    construction = std::max(construction, converse::per_demand_bound(placement, demand, order));
  }
  auto report = make_report("MAIS >= rotation-induced bound for " + demand.to_string(),
                            construction, best.value, Relation::kAtLeast);
  report.match = report.match && all_acyclic;
  return report;
}

bool VerificationReport::passed() const {
  return std::all_of(records.begin(), records.end(), [](const CountReport& r) { return r.match; });
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json records_json = nlohmann::json::array();
  std::size_t failed = 0;
  for (const auto& r : records) {
    records_json.push_back(oracle::to_json(r));
    if (!r.match) ++failed;
  }
  return nlohmann::json{
      {"structure", {{"K", users}, {"alpha", alpha}, {"F", files_per_class}}},
      {"records", records_json},
      {"summary",
       {{"total", records.size()},
        {"passed", records.size() - failed},
        {"failed", failed},
        {"all_passed", failed == 0}}},
  };
}

VerificationReport run_verification(const FdsStructure& structure,
                                    const VerificationOptions& options) {
  const int users = structure.users();
  const int alpha = structure.alpha();
  const int files = structure.files_per_class();

  VerificationReport report;
  report.users = users;
  report.alpha = alpha;
  report.files_per_class = files;
  auto& out = report.records;

  if (users >= 2 && users <= options.rotation_order_max_users) {
    std::vector<int> p(static_cast<std::size_t>(users));
    std::iota(p.begin(), p.end(), 1);
    std::int64_t checked = 0;
    std::int64_t agreeing = 0;
    do {
      const Permutation pi(p);
      for (int k1 = 1; k1 <= users; ++k1) {
        for (int k2 = 1; k2 <= users; ++k2) {
          if (k1 == k2) continue;
          ++checked;
          if (rotation_order_count(pi, k1, k2) == rotation_order_formula(pi, k1, k2)) ++agreeing;
        }
      }
    } while (std::next_permutation(p.begin(), p.end()));
    out.push_back(make_report("rotation precedence count K - ell over all of S_K (pairs)",
                              Rational(checked), Rational(agreeing)));
  }

  const auto table = appearance_table(structure, options.family_cap);
  for (int t = 0; t <= alpha; ++t) {
    const BigInt formula = converse::appearance_count(users, alpha, files, t);
    BigInt first_mismatch = formula;
    BigInt representative = -1;
    for (const auto& [subfile, count] : table) {
      if (subfile.cached_by.size() != t) continue;
      if (representative < 0) representative = count;
      if (count != formula && first_mismatch == formula) first_mismatch = count;
    }
    out.push_back(make_report("appearances of a subfile with |T|=" + std::to_string(t),
                              Rational(formula), Rational(representative)));
    out.push_back(make_report("every subfile with |T|=" + std::to_string(t) + " counted alike",
                              Rational(formula), Rational(first_mismatch)));
  }
  if (alpha >= 2) {
    const SubfileId probe{FileId{1, UserSet::range(alpha)}, UserSet::of({2})};
    out.push_back(make_report("appearances of " + probe.to_string(),
                              Rational(converse::appearance_count(users, alpha, files, 1)),
                              Rational(table.at(probe))));
  }

  for (int t = 0; t <= alpha; ++t) {
    out.push_back(make_report("f(" + std::to_string(t) + ") closed form vs counting definition",
                              converse::f_coeff(users, alpha, t),
                              converse::f_coeff_from_counts(users, alpha, files, t)));
  }

  const auto curve = converse::bound_curve(structure);
  for (int t = 0; t <= alpha; ++t) {
    out.push_back(make_report("corner t=" + std::to_string(t) + " vs closed-form load",
                              curve.corners()[static_cast<std::size_t>(t)].load,
                              converse::closed_form_load(users, alpha, make_rational(t, users))));
  }

  {
    bool shape = true;
    for (int t = 1; t <= alpha; ++t) {
      shape = shape && converse::f_coeff(users, alpha, t) < converse::f_coeff(users, alpha, t - 1);
    }
    for (int t = 1; t + 1 <= alpha; ++t) {
      const Rational second = converse::f_coeff(users, alpha, t + 1) -
                              2 * converse::f_coeff(users, alpha, t) +
                              converse::f_coeff(users, alpha, t - 1);
      shape = shape && second >= 0;
    }
    out.push_back(make_report("f strictly decreasing and convex", Rational(1),
                              Rational(shape ? 1 : 0)));
  }

  const auto family = converse::demand_family(structure, options.family_cap);
  {
    std::int64_t sets = 0;
    std::int64_t acyclic = 0;
    for (const auto& entry : family.entries) {
      const auto graph = index_coding::build_graph(structure, entry.demand);
      for (const auto& u : entry.shifts) {
        ++sets;
        const auto set = graph.indices_of(index_coding::ordered_acyclic_set(entry.demand, u));
        if (index_coding::is_acyclic(graph, set)) ++acyclic;
      }
    }
    out.push_back(make_report("rotation-induced vertex sets that are acyclic", Rational(sets),
                              Rational(acyclic)));
  }

  std::vector<std::vector<Rational>> profiles;
  for (int t = 0; t <= alpha; ++t) {
    std::vector<Rational> x(static_cast<std::size_t>(alpha + 1), Rational(0));
    x[static_cast<std::size_t>(t)] = 1;
    profiles.push_back(std::move(x));
  }
  profiles.emplace_back(static_cast<std::size_t>(alpha + 1), make_rational(1, alpha + 1));
  for (const auto& x : profiles) {
    std::string label;
    for (const auto& v : x) label += (label.empty() ? "" : ",") + to_string(v);
    const auto check = converse::aggregate_check(structure, x, options.family_cap);
    out.push_back(make_report("average bound vs LP objective at x=(" + label + ")",
                              check.lp_objective, check.average_bound));
  }

  {
    std::int64_t points = 0;
    std::int64_t agreeing = 0;
    for (int i = 0; i <= 4 * alpha; ++i) {
      const Rational m = make_rational(i, 4);
      ++points;
      const auto vertices = converse::solve_lp_by_vertices(users, alpha, m);
      const Rational interpolated = curve.at(m * structure.library_size() / users);
      if (vertices.value == interpolated) ++agreeing;
    }
    out.push_back(make_report("LP vertex optimum equals curve interpolation (grid points)",
                              Rational(points), Rational(agreeing)));
  }

  const auto first_graph_size = static_cast<std::size_t>(users) << (alpha - 1);
  if (!family.entries.empty() && first_graph_size <= options.mais_cap) {
    const int t = std::min(1, alpha);
    const auto placement = schemes::selfish_symmetric_placement(structure, t);
    out.push_back(mais_vs_construction(placement, family.entries.front().demand, options.mais_cap));
  }

  return report;
}

}  // namespace cachelab::oracle
