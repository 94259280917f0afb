#include <algorithm>
#include <numeric>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "cachelab/combinatorics.hpp"
#include "cachelab/converse.hpp"
#include "cachelab/oracle.hpp"
#include "cachelab/schemes.hpp"

namespace cachelab {
namespace {

TEST(RotationOrder, Examples) {
  const Permutation pi({1, 2, 3, 4});
  EXPECT_EQ(oracle::rotation_order_count(pi, 1, 3), 2);
  EXPECT_EQ(oracle::rotation_order_formula(pi, 1, 3), 2);
  EXPECT_EQ(oracle::rotation_order_count(pi, 1, 2), 3);
  EXPECT_EQ(oracle::rotation_order_count(pi, 2, 1), 1);
}

TEST(RotationOrder, FormulaMatchesEnumerationUpToSix) {
  for (int users = 2; users <= 6; ++users) {
    std::vector<int> image(static_cast<std::size_t>(users));
    std::iota(image.begin(), image.end(), 1);
    do {
      const Permutation pi(image);
      for (int a = 1; a <= users; ++a) {
        for (int b = 1; b <= users; ++b) {
          if (a != b) ASSERT_EQ(oracle::rotation_order_count(pi, a, b), oracle::rotation_order_formula(pi, a, b));
        }
      }
    } while (std::next_permutation(image.begin(), image.end()));
  }
}

TEST(CountAppearances, FourThreeOneExamples) {
  const FdsStructure s(4, 3, 1);
  const FileId file{1, UserSet::of({1, 2, 3})};
  EXPECT_EQ(oracle::count_appearances(s, SubfileId{file, UserSet::of({2})}), 10);
  EXPECT_EQ(oracle::count_appearances(s, SubfileId{file, UserSet::of({1, 2, 3})}), 0);
}

TEST(CountAppearances, ThreeTwoTwoMatchesFormula) {
  const FdsStructure s(3, 2, 2);
  const auto table = oracle::appearance_table(s);
  const BigInt expected = converse::appearance_count(3, 2, 2, 1);
  int checked = 0;
  for (const auto& [subfile, count] : table) {
    if (subfile.cached_by.size() != 1) continue;
    EXPECT_EQ(count, expected) << subfile.to_string();
    ++checked;
  }
  EXPECT_EQ(checked, 12);  // 6 files x 2 singleton T
  // a_1 = 1! 0! 1! binom(0,0) 2^2 = 4; (alpha - 1) a_1 (K - 1) = 8.
  EXPECT_EQ(expected, 8);
}

TEST(CountAppearances, FormulaAgreesForAllReplicationLevels) {
  for (const auto& [users, alpha, files] :
       std::vector<std::tuple<int, int, int>>{{4, 3, 1}, {4, 2, 1}, {3, 2, 2}, {5, 3, 1}}) {
    const FdsStructure s(users, alpha, files);
    const auto table = oracle::appearance_table(s);
    for (const auto& [subfile, count] : table) {
      EXPECT_EQ(count, converse::appearance_count(users, alpha, files, subfile.cached_by.size()))
          << subfile.to_string();
    }
  }
}

// Total bound mass over the family equals the appearance-weighted subfile mass.
TEST(CountAppearances, ReductionToProfileAverage) {
  for (const auto& [users, alpha, files] :
       std::vector<std::tuple<int, int, int>>{{4, 3, 1}, {3, 2, 2}, {4, 2, 1}}) {
    const FdsStructure s(users, alpha, files);
    std::vector<Rational> x(static_cast<std::size_t>(alpha + 1));
    Rational rest = 1;
    for (int t = 0; t < alpha; ++t) {
      x[static_cast<std::size_t>(t)] = rest / 2;
      rest -= rest / 2;
    }
    x.back() = rest;
    Rational weighted = 0;
    for (int t = 0; t <= alpha; ++t) {
      weighted += Rational(converse::appearance_count(users, alpha, files, t)) *
                  x[static_cast<std::size_t>(t)];
    }
    const Rational bounds = Rational(factorial(users) * power(files, users));
    const auto check = converse::aggregate_check(s, x);
    EXPECT_EQ(check.average_bound, weighted * s.library_size() / bounds);
  }
}

TEST(SubfileSymmetry, Examples) {
  EXPECT_TRUE(oracle::subfile_symmetry_check(FdsStructure(4, 3, 1), 1));
  EXPECT_TRUE(oracle::subfile_symmetry_check(FdsStructure(4, 3, 1), 3));
  EXPECT_TRUE(oracle::subfile_symmetry_check(FdsStructure(3, 2, 2), 0));
}

TEST(MaisVsConstruction, Examples) {
  const FdsStructure s(4, 3, 1);
  const auto entry = converse::demand_family(s).entries.front();

  const auto t1 = oracle::mais_vs_construction(schemes::selfish_symmetric_placement(s, 1),
                                               entry.demand);
  EXPECT_TRUE(t1.match);
  EXPECT_EQ(t1.relation, oracle::Relation::kAtLeast);
  EXPECT_GE(t1.brute_value, t1.formula_value);
  EXPECT_GE(t1.formula_value, make_rational(5, 3));

  const auto full = oracle::mais_vs_construction(schemes::selfish_symmetric_placement(s, 3),
                                                 entry.demand);
  EXPECT_EQ(full.brute_value, 0);
  EXPECT_EQ(full.formula_value, 0);

  const auto empty = oracle::mais_vs_construction(schemes::selfish_symmetric_placement(s, 0),
                                                  entry.demand);
  EXPECT_EQ(empty.brute_value, 4);
  EXPECT_TRUE(empty.match);
}

TEST(MaisVsConstruction, WithoutProvenanceTriesEveryOrder) {
  const FdsStructure s(3, 2, 1);
  auto demand = converse::demand_family(s).entries.front().demand;
  demand.provenance.reset();
  const auto report = oracle::mais_vs_construction(schemes::selfish_symmetric_placement(s, 1), demand);
  EXPECT_TRUE(report.match);
}

TEST(Report, JsonShape) {
  const auto report = oracle::make_report("x", make_rational(1, 3), make_rational(2, 6));
  EXPECT_TRUE(report.match);
  const auto j = oracle::to_json(report);
  EXPECT_EQ(j.at("formula_value"), "1/3");
  EXPECT_EQ(j.at("brute_value"), "1/3");
  EXPECT_EQ(j.at("match"), true);
  EXPECT_FALSE(oracle::make_report("y", 1, 2).match);
  EXPECT_TRUE(oracle::make_report("z", 1, 2, oracle::Relation::kAtLeast).match);
}

TEST(RunVerification, PassesOnSpecInstances) {
  for (const auto& [users, alpha, files] :
       std::vector<std::tuple<int, int, int>>{{4, 3, 1}, {3, 2, 2}, {2, 1, 1}}) {
    const auto report = oracle::run_verification(FdsStructure(users, alpha, files));
    EXPECT_TRUE(report.passed());
    const auto j = report.to_json();
    EXPECT_EQ(j.at("summary").at("failed"), 0);
    EXPECT_EQ(j.at("summary").at("all_passed"), true);
  }
}

TEST(RunVerification, IncludesTheTenCount) {
  const auto report = oracle::run_verification(FdsStructure(4, 3, 1));
  bool found = false;
  for (const auto& r : report.records) {
    if (r.subject.find("W_{1,123,2}") != std::string::npos) {
      found = true;
      EXPECT_EQ(r.brute_value, 10);
      EXPECT_EQ(r.formula_value, 10);
    }
  }
  EXPECT_TRUE(found);
}

}  // namespace
}  // namespace cachelab
