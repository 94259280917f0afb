#pragma once

// Combinatorial substrate of the symmetric (K, alpha, F) file-demand-set
// model: user subsets, file classes, per-user demand sets, the 1-based
// modulo convention and circular permutations.

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace cachelab {

inline constexpr int kMaxUsers = 31;

// A subset of the users [1..K], stored as a bit mask (bit k-1 <-> user k).
//
// Ordering is lexicographic on the ascending member list, so {1,4} < {2,3}
// and {1} < {1,2}. Every set-valued result in the library is sorted by it.
class UserSet {
 public:
  constexpr UserSet() = default;

  static constexpr UserSet from_mask(std::uint32_t mask) { return UserSet(mask); }
  static UserSet of(std::initializer_list<int> members);
  static UserSet of(const std::vector<int>& members);
  // The full set [1..n].
  static UserSet range(int n);

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(int user) const {
    return user >= 1 && user <= kMaxUsers && ((mask_ >> (user - 1)) & 1u) != 0;
  }
  constexpr bool is_subset_of(UserSet other) const { return (mask_ & ~other.mask_) == 0; }

  UserSet with(int user) const;
  UserSet without(int user) const;

  constexpr UserSet operator|(UserSet o) const { return UserSet(mask_ | o.mask_); }
  constexpr UserSet operator&(UserSet o) const { return UserSet(mask_ & o.mask_); }
  constexpr UserSet operator-(UserSet o) const { return UserSet(mask_ & ~o.mask_); }

  std::vector<int> members() const;

  // Members written back to back ("123"), comma separated once any member
  // exceeds 9, "{}" for the empty set.
  std::string to_string() const;

  constexpr bool operator==(const UserSet&) const = default;
  friend constexpr std::strong_ordering operator<=>(UserSet a, UserSet b) {
    std::uint32_t x = a.mask_;
    std::uint32_t y = b.mask_;
    while (x != 0 && y != 0) {
      const int lx = std::countr_zero(x);
      const int ly = std::countr_zero(y);
      if (lx != ly) return lx <=> ly;
      x &= x - 1;
      y &= y - 1;
    }
    if (x == 0 && y == 0) return std::strong_ordering::equal;
    return x == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  constexpr explicit UserSet(std::uint32_t mask) : mask_(mask) {}

  std::uint32_t mask_ = 0;
};

// A file class W_S is identified by the alpha users interested in it.
using ClassId = UserSet;

// All subsets of `universe` with exactly `size` members, lexicographic order.
std::vector<UserSet> subsets_of_size(UserSet universe, int size);

// All subsets of `universe` (including the empty set), lexicographic order.
std::vector<UserSet> all_subsets(UserSet universe);

// The symmetric (K, alpha, F) file-demand-set structure.
//
// The library holds C = binom(K, alpha) classes of F files each. Only the
// N >= K regime is accepted: F >= ceil(K / C).
class FdsStructure {
 public:
  // Throws std::invalid_argument when the parameters are out of range.
  FdsStructure(int users, int alpha, int files_per_class);

  int users() const { return users_; }
  int alpha() const { return alpha_; }
  int files_per_class() const { return files_per_class_; }

  std::int64_t class_count() const;
  std::int64_t library_size() const;
  // |FDS_k| = F * binom(K - 1, alpha - 1), identical for every user.
  std::int64_t fds_size() const;

  UserSet all_users() const { return UserSet::range(users_); }
  bool is_class(UserSet s) const { return s.size() == alpha_ && s.is_subset_of(all_users()); }

  bool operator==(const FdsStructure&) const = default;

 private:
  int users_;
  int alpha_;
  int files_per_class_;
};

// W_{f,S}: file index f in [1..F] of class S.
struct FileId {
  int index = 1;
  ClassId cls;

  std::string to_string() const;

  bool operator==(const FileId&) const = default;
  friend std::strong_ordering operator<=>(const FileId& a, const FileId& b) {
    if (auto c = a.cls <=> b.cls; c != 0) return c;
    return a.index <=> b.index;
  }
};

// W_{f,S,T}: the part of W_{f,S} cached exactly by the users in T.
struct SubfileId {
  FileId file;
  UserSet cached_by;

  std::string to_string() const;

  bool operator==(const SubfileId&) const = default;
  friend std::strong_ordering operator<=>(const SubfileId& a, const SubfileId& b) {
    if (auto c = a.file <=> b.file; c != 0) return c;
    return a.cached_by <=> b.cached_by;
  }
};

// Bijection on [1..n], stored as the image vector (pi(1), ..., pi(n)).
class Permutation {
 public:
  // Throws std::invalid_argument unless `image` is a bijection on [1..n].
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(image_.size()); }
  // pi(i) for i in [1..n].
  int operator()(int i) const { return image_.at(static_cast<std::size_t>(i - 1)); }
  // pi^{-1}(value): the 1-based position holding `value`.
  int position_of(int value) const { return inverse_.at(static_cast<std::size_t>(value - 1)); }

  const std::vector<int>& image() const { return image_; }

  // Rotation by `shift` places: (pi(shift+1), ..., pi(n), pi(1), ..., pi(shift)).
  Permutation rotated(int shift) const;

  std::string to_string() const;

  bool operator==(const Permutation& o) const { return image_ == o.image_; }
  auto operator<=>(const Permutation& o) const { return image_ <=> o.image_; }

 private:
  std::vector<int> image_;
  std::vector<int> inverse_;
};

// Classes in lexicographic order; exactly binom(K, alpha) of them.
std::vector<ClassId> enumerate_classes(const FdsStructure& structure);

// Classes of interest to user k. Throws std::out_of_range for k outside [1..K].
std::vector<ClassId> user_fds(const FdsStructure& structure, int user);

// m mod n mapped onto [1..n] (so n divides m gives n).
int mod1(long long m, long long n);

// One representative per rotation class of S_K, each starting with 1, in
// lexicographic order; (K - 1)! permutations.
std::vector<Permutation> circular_representatives(int users);

// The K rotations of `u`, ordered by shift amount; the first is `u`.
std::vector<Permutation> circular_shifts(const Permutation& u);

}  // namespace cachelab
