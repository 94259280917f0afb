#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "cachelab/combinatorics.hpp"
#include "cachelab/fds.hpp"

namespace cachelab {
namespace {

std::vector<std::string> names(const std::vector<UserSet>& sets) {
  std::vector<std::string> out;
  for (UserSet s : sets) out.push_back(s.to_string());
  return out;
}

TEST(UserSet, RendersMembersInAscendingOrder) {
  EXPECT_EQ(UserSet::of({3, 1, 2}).to_string(), "123");
  EXPECT_EQ(UserSet{}.to_string(), "{}");
  EXPECT_EQ(UserSet::of({2, 11}).to_string(), "2,11");
}

TEST(UserSet, RejectsOutOfRangeAndDuplicateMembers) {
  EXPECT_THROW(UserSet::of({0}), std::out_of_range);
  EXPECT_THROW(UserSet::of({kMaxUsers + 1}), std::out_of_range);
  EXPECT_THROW(UserSet::of({2, 2}), std::invalid_argument);
}

TEST(UserSet, OrderIsLexicographicOnMembers) {
  EXPECT_LT(UserSet::of({1, 4}), UserSet::of({2, 3}));
  EXPECT_LT(UserSet::of({1}), UserSet::of({1, 2}));
  EXPECT_LT(UserSet{}, UserSet::of({1}));
}

TEST(Subsets, SizedSubsetsMatchFilteredPowerSet) {
  for (int n = 0; n <= 7; ++n) {
    const UserSet universe = UserSet::range(n);
    for (int k = 0; k <= n + 1; ++k) {
      std::vector<UserSet> expected;
      for (UserSet s : all_subsets(universe)) {
        if (s.size() == k) expected.push_back(s);
      }
      EXPECT_EQ(subsets_of_size(universe, k), expected) << "n=" << n << " k=" << k;
      EXPECT_EQ(static_cast<std::int64_t>(expected.size()), binomial(n, k));
    }
  }
}

TEST(Subsets, SparseUniverse) {
  EXPECT_EQ(names(subsets_of_size(UserSet::of({2, 5, 7}), 2)),
            (std::vector<std::string>{"25", "27", "57"}));
}

TEST(FdsStructure, DerivedSizes) {
  const FdsStructure s(4, 3, 1);
  EXPECT_EQ(s.class_count(), 4);
  EXPECT_EQ(s.library_size(), 4);
  EXPECT_EQ(s.fds_size(), 3);
  const FdsStructure wide(6, 3, 2);
  EXPECT_EQ(wide.class_count(), 20);
  EXPECT_EQ(wide.library_size(), 40);
  EXPECT_EQ(wide.fds_size(), 20);
}

TEST(FdsStructure, RejectsInvalidParameters) {
  EXPECT_THROW(FdsStructure(0, 1, 1), std::invalid_argument);
  EXPECT_THROW(FdsStructure(4, 0, 1), std::invalid_argument);
  EXPECT_THROW(FdsStructure(4, 5, 1), std::invalid_argument);
  EXPECT_THROW(FdsStructure(4, 3, 0), std::invalid_argument);
  // N = F < K when alpha = K and F is small.
  EXPECT_THROW(FdsStructure(4, 4, 3), std::invalid_argument);
  EXPECT_NO_THROW(FdsStructure(4, 4, 4));
}

TEST(EnumerateClasses, FourUsersAlphaThree) {
  EXPECT_EQ(names(enumerate_classes(FdsStructure(4, 3, 1))),
            (std::vector<std::string>{"123", "124", "134", "234"}));
}

TEST(EnumerateClasses, AlphaEqualsK) {
  const auto classes = enumerate_classes(FdsStructure(5, 5, 5));
  ASSERT_EQ(classes.size(), 1u);
  EXPECT_EQ(classes.front(), UserSet::range(5));
}

TEST(EnumerateClasses, FourUsersAlphaTwo) {
  EXPECT_EQ(enumerate_classes(FdsStructure(4, 2, 1)).size(), 6u);
}

TEST(UserFds, Examples) {
  EXPECT_EQ(names(user_fds(FdsStructure(4, 3, 1), 1)),
            (std::vector<std::string>{"123", "124", "134"}));
  EXPECT_EQ(names(user_fds(FdsStructure(4, 2, 1), 2)),
            (std::vector<std::string>{"12", "23", "24"}));
  for (int k = 1; k <= 5; ++k) {
    const auto fds = user_fds(FdsStructure(5, 1, 1), k);
    ASSERT_EQ(fds.size(), 1u);
    EXPECT_EQ(fds.front(), UserSet::of({k}));
  }
}

TEST(UserFds, RejectsUnknownUser) {
  const FdsStructure s(4, 3, 1);
  EXPECT_THROW(user_fds(s, 0), std::out_of_range);
  EXPECT_THROW(user_fds(s, 5), std::out_of_range);
}

TEST(UserFds, CoverageProperty) {
  for (int users = 1; users <= 8; ++users) {
    for (int alpha = 1; alpha <= users; ++alpha) {
      const int files = static_cast<int>((users + binomial(users, alpha) - 1) / binomial(users, alpha));
      const FdsStructure s(users, alpha, files);
      std::map<UserSet, int> seen;
      for (int k = 1; k <= users; ++k) {
        const auto fds = user_fds(s, k);
        EXPECT_EQ(static_cast<std::int64_t>(fds.size()), binomial(users - 1, alpha - 1));
        for (ClassId c : fds) {
          EXPECT_TRUE(c.contains(k));
          ++seen[c];
        }
      }
      EXPECT_EQ(static_cast<std::int64_t>(seen.size()), s.class_count());
      for (const auto& [cls, count] : seen) EXPECT_EQ(count, alpha) << cls.to_string();
    }
  }
}

TEST(Mod1, Examples) {
  EXPECT_EQ(mod1(4, 4), 4);
  EXPECT_EQ(mod1(5, 4), 1);
  EXPECT_EQ(mod1(7, 3), 1);
  EXPECT_EQ(mod1(0, 5), 5);
  EXPECT_EQ(mod1(-1, 5), 4);
  EXPECT_THROW(mod1(3, 0), std::invalid_argument);
}

TEST(Mod1, RangeAndCongruence) {
  for (long long n = 1; n <= 12; ++n) {
    for (long long m = -100; m <= 100; ++m) {
      const int r = mod1(m, n);
      EXPECT_GE(r, 1);
      EXPECT_LE(r, n);
      EXPECT_EQ((r - m) % n, 0) << "m=" << m << " n=" << n;
    }
  }
}

TEST(Permutation, ValidatesBijection) {
  EXPECT_THROW(Permutation({1, 1, 2}), std::invalid_argument);
  EXPECT_THROW(Permutation({0, 1}), std::invalid_argument);
  EXPECT_THROW(Permutation({1, 3}), std::invalid_argument);
  const Permutation p({3, 1, 2});
  for (int i = 1; i <= 3; ++i) EXPECT_EQ(p.position_of(p(i)), i);
  EXPECT_EQ(p.to_string(), "(3,1,2)");
}

TEST(CircularRepresentatives, FourUsers) {
  std::vector<std::string> got;
  for (const auto& p : circular_representatives(4)) got.push_back(p.to_string());
  EXPECT_EQ(got, (std::vector<std::string>{"(1,2,3,4)", "(1,2,4,3)", "(1,3,2,4)", "(1,3,4,2)",
                                           "(1,4,2,3)", "(1,4,3,2)"}));
}

TEST(CircularRepresentatives, SmallCases) {
  ASSERT_EQ(circular_representatives(1).size(), 1u);
  const auto two = circular_representatives(2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].image(), (std::vector<int>{1, 2}));
  const auto three = circular_representatives(3);
  ASSERT_EQ(three.size(), 2u);
  EXPECT_EQ(three[0].image(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(three[1].image(), (std::vector<int>{1, 3, 2}));
}

// Brute force: canonical rotation (the one starting with 1) of every
// permutation in S_K gives exactly the representative set.
TEST(CircularRepresentatives, OnePerRotationClass) {
  for (int users = 1; users <= 6; ++users) {
    std::vector<int> image(static_cast<std::size_t>(users));
    std::iota(image.begin(), image.end(), 1);
    std::set<std::vector<int>> canonical;
    do {
      std::vector<int> rotated = image;
      std::rotate(rotated.begin(), std::find(rotated.begin(), rotated.end(), 1), rotated.end());
      canonical.insert(rotated);
    } while (std::next_permutation(image.begin(), image.end()));

    const auto reps = circular_representatives(users);
    EXPECT_EQ(BigInt(reps.size()), factorial(users - 1));
    std::set<std::vector<int>> got;
    for (const auto& p : reps) {
      EXPECT_EQ(p(1), 1);
      got.insert(p.image());
    }
    EXPECT_EQ(got, canonical) << "K=" << users;
  }
}

TEST(CircularShifts, Examples) {
  std::vector<std::string> got;
  for (const auto& p : circular_shifts(Permutation({1, 2, 3, 4}))) got.push_back(p.to_string());
  EXPECT_EQ(got, (std::vector<std::string>{"(1,2,3,4)", "(2,3,4,1)", "(3,4,1,2)", "(4,1,2,3)"}));

  const auto single = circular_shifts(Permutation({1}));
  ASSERT_EQ(single.size(), 1u);

  got.clear();
  for (const auto& p : circular_shifts(Permutation({1, 3, 2}))) got.push_back(p.to_string());
  EXPECT_EQ(got, (std::vector<std::string>{"(1,3,2)", "(3,2,1)", "(2,1,3)"}));
}

TEST(Combinatorics, BinomialConvention) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(2, 3), 0);
  EXPECT_EQ(binomial(-1, -1), 0);
  EXPECT_EQ(binomial(3, -1), 0);
  EXPECT_EQ(binomial(62, 31), 465428353255261088LL);
  EXPECT_EQ(big_binomial(100, 50), BigInt("100891344545564193334812497256"));
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_EQ(power(3, 4), 81);
}

}  // namespace
}  // namespace cachelab
