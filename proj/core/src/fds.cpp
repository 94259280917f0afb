#include "cachelab/fds.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cachelab/combinatorics.hpp"

namespace cachelab {

UserSet UserSet::of(std::initializer_list<int> members) {
  return of(std::vector<int>(members));
}

UserSet UserSet::of(const std::vector<int>& members) {
  std::uint32_t mask = 0;
  for (int k : members) {
    if (k < 1 || k > kMaxUsers) {
      throw std::out_of_range("user " + std::to_string(k) + " outside [1.." +
                              std::to_string(kMaxUsers) + "]");
    }
    const std::uint32_t bit = 1u << (k - 1);
    if ((mask & bit) != 0) {
      throw std::invalid_argument("duplicate user " + std::to_string(k));
    }
    mask |= bit;
  }
  return UserSet(mask);
}

UserSet UserSet::range(int n) {
  if (n < 0 || n > kMaxUsers) throw std::out_of_range("user range too large");
  return UserSet((1u << n) - 1u);
}

namespace {

std::uint32_t bit_of(int user) {
  if (user < 1 || user > kMaxUsers) {
    throw std::out_of_range("user " + std::to_string(user) + " outside [1.." +
                            std::to_string(kMaxUsers) + "]");
  }
  return 1u << (user - 1);
}

}  // namespace

UserSet UserSet::with(int user) const { return UserSet(mask_ | bit_of(user)); }

UserSet UserSet::without(int user) const { return UserSet(mask_ & ~bit_of(user)); }

std::vector<int> UserSet::members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m) + 1);
  }
  return out;
}

std::string UserSet::to_string() const {
  if (empty()) return "{}";
  const auto list = members();
  const bool wide = list.back() > 9;
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (wide && i > 0) out += ',';
    out += std::to_string(list[i]);
  }
  return out;
}

std::vector<UserSet> subsets_of_size(UserSet universe, int size) {
  std::vector<UserSet> out;
  const std::vector<int> pool = universe.members();
  const int n = static_cast<int>(pool.size());
  if (size < 0 || size > n) return out;
  // Index combinations advance in lexicographic order directly.
  std::vector<int> pick(static_cast<std::size_t>(size));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    UserSet s;
    for (int i : pick) s = s.with(pool[static_cast<std::size_t>(i)]);
    out.push_back(s);
    int i = size - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - size + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

std::vector<UserSet> all_subsets(UserSet universe) {
  std::vector<UserSet> out;
  const std::uint32_t u = universe.mask();
  // Standard submask walk, then sort into lexicographic order.
  std::uint32_t s = u;
  while (true) {
    out.push_back(UserSet::from_mask(s));
    if (s == 0) break;
    s = (s - 1) & u;
  }
  std::sort(out.begin(), out.end());
  return out;
}

FdsStructure::FdsStructure(int users, int alpha, int files_per_class)
    : users_(users), alpha_(alpha), files_per_class_(files_per_class) {
  if (users < 1 || users > kMaxUsers) {
    throw std::invalid_argument("K must lie in [1.." + std::to_string(kMaxUsers) + "]");
  }
  if (alpha < 1 || alpha > users) {
    throw std::invalid_argument("alpha must lie in [1..K]");
  }
  if (files_per_class < 1) {
    throw std::invalid_argument("F must be positive");
  }
  const std::int64_t classes = class_count();
  const std::int64_t min_files = (users + classes - 1) / classes;
  if (files_per_class < min_files) {
    throw std::invalid_argument("N >= K requires F >= " + std::to_string(min_files));
  }
}

std::int64_t FdsStructure::class_count() const { return binomial(users_, alpha_); }

std::int64_t FdsStructure::library_size() const { return files_per_class_ * class_count(); }

std::int64_t FdsStructure::fds_size() const {
  return files_per_class_ * binomial(users_ - 1, alpha_ - 1);
}

std::string FileId::to_string() const {
  return "W_{" + std::to_string(index) + "," + cls.to_string() + "}";
}

std::string SubfileId::to_string() const {
  return "W_{" + std::to_string(file.index) + "," + file.cls.to_string() + "," +
         cached_by.to_string() + "}";
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  const auto n = image_.size();
  inverse_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int v = image_[i];
    if (v < 1 || static_cast<std::size_t>(v) > n || inverse_[static_cast<std::size_t>(v - 1)] != 0) {
      throw std::invalid_argument("not a permutation of [1.." + std::to_string(n) + "]");
    }
    inverse_[static_cast<std::size_t>(v - 1)] = static_cast<int>(i + 1);
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 1);
  return Permutation(std::move(image));
}

Permutation Permutation::rotated(int shift) const {
  const int n = size();
  std::vector<int> image(image_.size());
  for (int i = 0; i < n; ++i) {
    image[static_cast<std::size_t>(i)] = image_[static_cast<std::size_t>((i + shift) % n)];
  }
  return Permutation(std::move(image));
}

std::string Permutation::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(image_[i]);
  }
  return out + ")";
}

std::vector<ClassId> enumerate_classes(const FdsStructure& structure) {
  return subsets_of_size(structure.all_users(), structure.alpha());
}

std::vector<ClassId> user_fds(const FdsStructure& structure, int user) {
  if (user < 1 || user > structure.users()) {
    throw std::out_of_range("user " + std::to_string(user) + " outside [1..K]");
  }
  std::vector<ClassId> out;
  for (ClassId s : enumerate_classes(structure)) {
    if (s.contains(user)) out.push_back(s);
  }
  return out;
}

int mod1(long long m, long long n) {
  if (n < 1) throw std::invalid_argument("mod1 needs a positive modulus");
  long long r = m % n;
  if (r <= 0) r += n;
  return static_cast<int>(r);
}

std::vector<Permutation> circular_representatives(int users) {
  if (users < 1) throw std::invalid_argument("K must be positive");
  std::vector<int> tail(static_cast<std::size_t>(users - 1));
  std::iota(tail.begin(), tail.end(), 2);
  std::vector<Permutation> out;
  do {
    std::vector<int> image{1};
    image.insert(image.end(), tail.begin(), tail.end());
    out.emplace_back(std::move(image));
  } while (std::next_permutation(tail.begin(), tail.end()));
  return out;
}

std::vector<Permutation> circular_shifts(const Permutation& u) {
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(u.size()));
  for (int s = 0; s < u.size(); ++s) out.push_back(u.rotated(s));
  return out;
}

}  // namespace cachelab
