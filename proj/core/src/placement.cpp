#include "cachelab/placement.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cachelab {

std::string to_string(PlacementKind kind) {
  switch (kind) {
    case PlacementKind::kMan: return "man";
    case PlacementKind::kSelfish: return "selfish";
    case PlacementKind::kProfile: return "profile";
    case PlacementKind::kCustom: return "custom";
  }
  return "unknown";
}

std::vector<FileId> all_files(const FdsStructure& structure) {
  std::vector<FileId> out;
  for (ClassId s : enumerate_classes(structure)) {
    for (int f = 1; f <= structure.files_per_class(); ++f) out.push_back(FileId{f, s});
  }
  return out;
}

Placement::Placement(FdsStructure structure, PlacementKind kind, bool selfish,
                     Rational memory_budget, int replication)
    : structure_(structure),
      kind_(kind),
      selfish_(selfish),
      memory_budget_(std::move(memory_budget)),
      replication_(replication) {}

Placement::Placement(const Placement& other)
    : Placement(other.structure_, other.kind_, other.selfish_, other.memory_budget_,
                other.replication_) {
  for (const auto& [subfile, size] : other.sizes_) set_size(subfile, size);
}

Placement& Placement::operator=(const Placement& other) {
  if (this != &other) {
    Placement copy(other);
    *this = std::move(copy);
  }
  return *this;
}

void Placement::set_size(const SubfileId& subfile, Rational size) {
  if (size < 0) throw std::invalid_argument("negative subfile size");
  if (!structure_.is_class(subfile.file.cls) || subfile.file.index < 1 ||
      subfile.file.index > structure_.files_per_class() ||
      !subfile.cached_by.is_subset_of(structure_.all_users())) {
    throw std::invalid_argument("subfile " + subfile.to_string() + " outside the library");
  }
  const auto known = ids_.find(subfile);
  const int id = known == ids_.end() ? -1 : known->second;
  if (size == 0) {
    sizes_.erase(subfile);
    if (id >= 0 && entries_[static_cast<std::size_t>(id)].size != nullptr) {
      entries_[static_cast<std::size_t>(id)].size = nullptr;
      auto& list = file_ids_[subfile.file];
      list.erase(std::find(list.begin(), list.end(), id));
    }
    return;
  }
  const Rational* interned = &*values_.insert(size).first;
  sizes_.insert_or_assign(subfile, std::move(size));
  if (id < 0) {
    ids_.emplace(subfile, static_cast<int>(entries_.size()));
    file_ids_[subfile.file].push_back(static_cast<int>(entries_.size()));
    entries_.push_back(Entry{subfile, interned});
  } else {
    if (entries_[static_cast<std::size_t>(id)].size == nullptr) {
      file_ids_[subfile.file].push_back(id);
    }
    entries_[static_cast<std::size_t>(id)].size = interned;
  }
}

std::size_t Placement::SubfileHash::operator()(const SubfileId& s) const noexcept {
  std::uint64_t key = (std::uint64_t{s.file.cls.mask()} << 32) | s.cached_by.mask();
  key ^= static_cast<std::uint64_t>(s.file.index) * 0x9e3779b97f4a7c15ULL;
  return std::hash<std::uint64_t>{}(key);
}

std::size_t Placement::FileHash::operator()(const FileId& f) const noexcept {
  const std::uint64_t key = (static_cast<std::uint64_t>(f.index) << 32) | f.cls.mask();
  return std::hash<std::uint64_t>{}(key);
}

Rational Placement::size(const SubfileId& subfile) const {
  const Rational* value = find(subfile);
  return value ? *value : Rational(0);
}

const Rational* Placement::find(const SubfileId& subfile) const {
  const auto it = ids_.find(subfile);
  return it == ids_.end() ? nullptr : entries_[static_cast<std::size_t>(it->second)].size;
}

int Placement::id_of(const SubfileId& subfile) const {
  const auto it = ids_.find(subfile);
  if (it == ids_.end() || entries_[static_cast<std::size_t>(it->second)].size == nullptr) {
    return -1;
  }
  return it->second;
}

const std::vector<int>& Placement::ids_of(const FileId& file) const {
  static const std::vector<int> kNone;
  const auto it = file_ids_.find(file);
  return it == file_ids_.end() ? kNone : it->second;
}

std::vector<std::pair<SubfileId, Rational>> Placement::subfiles_of(const FileId& file) const {
  std::vector<std::pair<SubfileId, Rational>> out;
  for (auto it = sizes_.lower_bound(SubfileId{file, UserSet{}});
       it != sizes_.end() && it->first.file == file; ++it) {
    out.emplace_back(it->first, it->second);
  }
  return out;
}

Rational Placement::memory_of(int user) const {
  Rational total = 0;
  for (const auto& [subfile, size] : sizes_) {
    if (subfile.cached_by.contains(user)) total += size;
  }
  return total;
}

std::optional<std::string> Placement::invariant_violation() const {
  for (const FileId& file : all_files(structure_)) {
    Rational total = 0;
    for (const auto& [subfile, size] : subfiles_of(file)) total += size;
    if (total != 1) {
      return "partition: parts of " + file.to_string() + " sum to " + cachelab::to_string(total);
    }
  }
  for (int k = 1; k <= structure_.users(); ++k) {
    const Rational used = memory_of(k);
    if (used > memory_budget_) {
      return "memory: user " + std::to_string(k) + " caches " + cachelab::to_string(used) +
             " > " + cachelab::to_string(memory_budget_);
    }
  }
  if (selfish_) {
    for (const auto& [subfile, size] : sizes_) {
      if (!subfile.cached_by.is_subset_of(subfile.file.cls)) {
        return "selfishness: " + subfile.to_string() + " cached outside its class";
      }
    }
  }
  return std::nullopt;
}

FileId DemandInstance::requested(int user) const {
  const auto i = static_cast<std::size_t>(user - 1);
  return FileId{files.at(i), classes.at(i)};
}

void DemandInstance::validate(const FdsStructure& structure) const {
  if (users() != structure.users() || files.size() != classes.size()) {
    throw std::invalid_argument("demand must name exactly one file per user");
  }
  for (int k = 1; k <= users(); ++k) {
    const FileId file = requested(k);
    if (!structure.is_class(file.cls) || !file.cls.contains(k)) {
      throw std::invalid_argument("user " + std::to_string(k) + " requests class " +
                                  file.cls.to_string() + " outside its demand set");
    }
    if (file.index < 1 || file.index > structure.files_per_class()) {
      throw std::invalid_argument("user " + std::to_string(k) + " requests file index " +
                                  std::to_string(file.index) + " outside [1..F]");
    }
  }
}

bool DemandInstance::distinct_files() const {
  std::set<FileId> seen;
  for (int k = 1; k <= users(); ++k) {
    if (!seen.insert(requested(k)).second) return false;
  }
  return true;
}

std::string DemandInstance::to_string() const {
  std::string out = "d=(";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i > 0) out += ',';
    out += classes[i].to_string();
  }
  out += ") f=(";
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(files[i]);
  }
  return out + ")";
}

Rational total_load(const std::vector<DeliveryMessage>& messages) {
  // Schemes reuse a handful of distinct sizes, so count them before adding.
  std::vector<std::pair<const Rational*, std::int64_t>> tally;
  for (const auto& m : messages) {
    auto it = std::find_if(tally.begin(), tally.end(),
                           [&](const auto& entry) { return same_value(*entry.first, m.size); });
    if (it == tally.end()) {
      tally.emplace_back(&m.size, 1);
    } else {
      ++it->second;
    }
  }
  Rational total = 0;
  for (const auto& [size, count] : tally) {
    total += Rational(numerator(*size) * count, denominator(*size));
  }
  return total;
}

}  // namespace cachelab
