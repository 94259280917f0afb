// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "cachelab/combinatorics.hpp"
#include "cachelab/converse.hpp"
#include "cachelab/fds.hpp"
#include "cachelab/index_coding.hpp"
#include "cachelab/oracle.hpp"
#include "cachelab/rational.hpp"
#include "cachelab/schemes.hpp"

namespace {

using namespace cachelab;

// Outcome of one criterion body: empty detail means pass.
struct Check {
  bool ok = true;
  std::string detail;
  std::uint64_t cases = 0;

  void fail(std::string why) {
    if (ok) detail = std::move(why);
    ok = false;
  }
};

int smallest_files(int users, int alpha) {
  const auto classes = binomial(users, alpha);
  return static_cast<int>((users + classes - 1) / classes);
}

std::string triple(int users, int alpha, int files) {
  return "(" + std::to_string(users) + "," + std::to_string(alpha) + "," + std::to_string(files) + ")";
}

Check golden_corners() {
  Check c;
  const auto curve = converse::bound_curve(FdsStructure(4, 3, 1));
  const std::vector<converse::CornerPoint> expected{
      {0, 4}, {1, make_rational(5, 3)}, {2, make_rational(2, 3)}, {3, 0}};
  c.cases = expected.size();
  if (curve.corners() != expected) c.fail("corner points differ");
  return c;
}

Check corner_matches_closed_form() {
  Check c;
  for (int users = 1; users <= 10; ++users) {
    for (int alpha = 1; alpha <= users; ++alpha) {
      const auto curve = converse::bound_curve(FdsStructure(users, alpha, smallest_files(users, alpha)));
      for (int t = 0; t <= alpha; ++t) {
        const Rational corner = curve.corners()[static_cast<std::size_t>(t)].load;
        const Rational direct = converse::f_coeff(users, alpha, t) *
                                (t == alpha ? Rational(0) : Rational(1));
        const Rational closed = converse::closed_form_load(users, alpha, make_rational(t, users));
        ++c.cases;
        if (corner != closed || (t < alpha && corner != direct)) {
          c.fail("K=" + std::to_string(users) + " alpha=" + std::to_string(alpha) +
                 " t=" + std::to_string(t) + ": " + to_string(corner) + " vs " + to_string(closed));
        }
      }
    }
  }
  return c;
}

Check appearance_counting() {
  Check c;
  const FdsStructure golden(4, 3, 1);
  const SubfileId subfile{FileId{1, UserSet::of({1, 2, 3})}, UserSet::of({2})};
  const BigInt ten = oracle::count_appearances(golden, subfile);
  if (ten != 10) c.fail("W_{1,123,2} counted " + ten.str() + " times");
  for (const auto& [users, alpha, files] :
       std::vector<std::tuple<int, int, int>>{{4, 3, 1}, {4, 2, 1}, {3, 2, 2}, {5, 3, 1}}) {
    const auto table = oracle::appearance_table(FdsStructure(users, alpha, files));
    for (const auto& [sub, count] : table) {
      const BigInt formula = converse::appearance_count(users, alpha, files, sub.cached_by.size());
      ++c.cases;
      if (count != formula) {
        c.fail(triple(users, alpha, files) + " " + sub.to_string() + ": brute " + count.str() +
               " formula " + formula.str());
      }
    }
  }
  return c;
}

Check rotation_precedence() {
  Check c;
  for (int users = 2; users <= 7; ++users) {
    std::vector<int> image(static_cast<std::size_t>(users));
    std::iota(image.begin(), image.end(), 1);
    do {
      const Permutation pi(image);
      for (int a = 1; a <= users; ++a) {
        for (int b = 1; b <= users; ++b) {
          if (a == b) continue;
          ++c.cases;
          if (oracle::rotation_order_count(pi, a, b) != oracle::rotation_order_formula(pi, a, b)) {
            c.fail("pi=" + pi.to_string() + " pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
          }
        }
      }
    } while (std::next_permutation(image.begin(), image.end()));
  }
  return c;
}

Check constructed_sets_acyclic() {
  Check c;
  for (int users = 3; users <= 5; ++users) {
    for (int alpha = 2; alpha <= users - 1; ++alpha) {
      const FdsStructure structure(users, alpha, smallest_files(users, alpha));
      for (const auto& entry : converse::demand_family(structure).entries) {
        const auto graph = index_coding::build_graph(structure, entry.demand);
        for (const auto& shift : entry.shifts) {
          const auto set = graph.indices_of(index_coding::ordered_acyclic_set(entry.demand, shift));
          ++c.cases;
          if (!index_coding::is_acyclic(graph, set)) {
            c.fail(triple(users, alpha, structure.files_per_class()) + " " +
                   entry.demand.to_string() + " u=" + shift.to_string());
          }
        }
      }
    }
  }
  return c;
}

// Random profile on [0..alpha] with positive rational entries summing to 1.
std::vector<Rational> random_profile(std::mt19937& rng, int alpha) {
  std::uniform_int_distribution<int> weight(1, 97);
  std::vector<int> w(static_cast<std::size_t>(alpha + 1));
  for (auto& v : w) v = weight(rng);
  const int total = std::accumulate(w.begin(), w.end(), 0);
  std::vector<Rational> x;
  for (int v : w) x.push_back(make_rational(v, total));
  return x;
}

Check aggregate_identity() {
  Check c;
  std::mt19937 rng(20240917u);
  for (const auto& [users, alpha, files] : std::vector<std::tuple<int, int, int>>{{4, 3, 1}, {3, 2, 2}}) {
    const FdsStructure structure(users, alpha, files);
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = random_profile(rng, alpha);
      Rational objective = 0;
      for (int t = 0; t < alpha; ++t) objective += converse::f_coeff(users, alpha, t) * x[static_cast<std::size_t>(t)];
      const auto check = converse::aggregate_check(structure, x);
      c.cases += check.bounds;
      if (check.average_bound != objective || check.lp_objective != objective) {
        c.fail(triple(users, alpha, files) + " trial " + std::to_string(trial) + ": average " +
               to_string(check.average_bound) + " objective " + to_string(objective));
      }
    }
  }
  return c;
}

Check man_simulation() {
  Check c;
  for (int users = 1; users <= 6; ++users) {
    for (int alpha = 1; alpha <= users; ++alpha) {
      const FdsStructure structure(users, alpha, smallest_files(users, alpha));
      for (int t = 0; t <= users; ++t) {
        const auto result = schemes::simulate_worst_case(schemes::man_placement(structure, t),
                                                         schemes::man_delivery);
        const Rational expected = make_rational(users - t, 1 + t);
        c.cases += result.demands_evaluated;
        if (!result.all_decodable || result.worst_case_load != expected) {
          c.fail(triple(users, alpha, structure.files_per_class()) + " t=" + std::to_string(t) +
                 ": load " + to_string(result.worst_case_load) +
                 (result.all_decodable ? "" : " (not decodable)"));
        }
      }
    }
  }
  return c;
}

Check ratio_range() {
  Check c;
  for (int users = 3; users <= 10; ++users) {
    for (int alpha = 2; alpha <= users - 1; ++alpha) {
      for (const auto& row : converse::ratio_report(users, alpha)) {
        const std::string where = "K=" + std::to_string(users) + " alpha=" + std::to_string(alpha) +
                                  " t=" + std::to_string(row.t);
        ++c.cases;
        if (row.ratio != row.simplified) c.fail(where + ": simplified form disagrees");
        if (row.ratio < 1) c.fail(where + ": ratio " + to_string(row.ratio) + " < 1");
        if (row.t >= 1 && row.t <= alpha - 2 && row.ratio <= 1) {
          c.fail(where + ": ratio " + to_string(row.ratio) + " not > 1");
        }
      }
    }
  }
  return c;
}

Check converse_soundness() {
  Check c;
  for (const auto& [users, alpha, files] : std::vector<std::tuple<int, int, int>>{{4, 3, 1}, {4, 2, 1}}) {
    const FdsStructure structure(users, alpha, files);
    const auto curve = converse::bound_curve(structure);
    for (int t = 0; t <= alpha; ++t) {
      const Rational achieved = schemes::worst_case_load(structure, schemes::SchemeKind::kSelfish, t);
      const Rational bound = curve.corners()[static_cast<std::size_t>(t)].load;
      ++c.cases;
      if (achieved < bound) {
        c.fail(triple(users, alpha, files) + " t=" + std::to_string(t) + ": greedy " +
               to_string(achieved) + " below bound " + to_string(bound));
      }
    }
  }
  return c;
}

Check lp_consistency() {
  Check c;
  constexpr int kPoints = 50;
  for (const auto& [users, alpha] : std::vector<std::pair<int, int>>{{4, 3}, {5, 3}, {6, 4}}) {
    for (int i = 0; i < kPoints; ++i) {
      const Rational m = make_rational(alpha * i, kPoints - 1);
      const Rational analytic = converse::solve_lp(users, alpha, m).value;
      const Rational vertices = converse::solve_lp_by_vertices(users, alpha, m).value;
      ++c.cases;
      if (analytic != vertices) {
        c.fail("K=" + std::to_string(users) + " alpha=" + std::to_string(alpha) + " m=" +
               to_string(m) + ": " + to_string(analytic) + " vs " + to_string(vertices));
      }
    }
  }
  return c;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Check()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "golden (4,3,1) corner points", 1.0, golden_corners},
      {2, "corner formula equals closed form, K <= 10", 5.0, corner_matches_closed_form},
      {3, "appearance counts, brute force vs formula", 60.0, appearance_counting},
      {4, "rotation precedence count, K <= 7", 30.0, rotation_precedence},
      {5, "constructed vertex sets acyclic, K <= 5", 30.0, constructed_sets_acyclic},
      {6, "averaged bound equals LP objective on random profiles", 30.0, aggregate_identity},
      {7, "MAN decodable with load (K-t)/(1+t), K <= 6", 60.0, man_simulation},
      {8, "ratio to MAN >= 1, strictly inside, K <= 10", 5.0, ratio_range},
      {9, "greedy selfish load >= lower bound at corners", 60.0, converse_soundness},
      {10, "LP closed form equals vertex enumeration on 50-point grid", 5.0, lp_consistency},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = criterion.body();
    } catch (const std::exception& e) {
      check.fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (check.ok && check.cases == 0) check.fail("nothing was checked");
    if (check.ok && seconds >= criterion.limit_seconds) {
      check.fail("over the time limit");
    }
    if (!check.ok) ++failed;
    std::printf("criterion %2d: %s  %-58s %10llu cases %8.3f s (limit %g s)%s%s\n", criterion.id,
                check.ok ? "PASS" : "FAIL", criterion.name,
                static_cast<unsigned long long>(check.cases), seconds, criterion.limit_seconds,
                check.ok ? "" : "  ", check.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
