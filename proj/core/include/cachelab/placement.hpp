#pragma once

// Value types shared by the placement/delivery simulator, the side-information
// graph and the converse pipeline. File size is normalised to 1, so every
// subfile size is an exact fraction of a file.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cachelab/fds.hpp"
#include "cachelab/rational.hpp"

namespace cachelab {

enum class PlacementKind { kMan, kSelfish, kProfile, kCustom };

std::string to_string(PlacementKind kind);

// Every file of the library, ordered by (class, index).
std::vector<FileId> all_files(const FdsStructure& structure);

// An uncoded placement: how much of each file is cached by exactly which users.
//
// Only subfiles of positive size are stored; `size()` of anything else is 0.
class Placement {
 public:
  Placement(FdsStructure structure, PlacementKind kind, bool selfish, Rational memory_budget,
            int replication = -1);
  Placement(const Placement& other);
  Placement& operator=(const Placement& other);
  Placement(Placement&&) noexcept = default;
  Placement& operator=(Placement&&) noexcept = default;

  const FdsStructure& structure() const { return structure_; }
  PlacementKind kind() const { return kind_; }
  // t for the MAN and symmetric selfish placements, -1 otherwise.
  int replication() const { return replication_; }
  bool selfish() const { return selfish_; }
  const Rational& memory_budget() const { return memory_budget_; }

  // Setting a size of zero removes the subfile.
  void set_size(const SubfileId& subfile, Rational size);
  Rational size(const SubfileId& subfile) const;
  // Null when the subfile is not placed. Equal sizes share one address.
  const Rational* find(const SubfileId& subfile) const;

  // Every subfile ever placed gets a dense id in [0, id_bound()); removed
  // subfiles keep theirs but id_of reports -1 for them.
  int id_of(const SubfileId& subfile) const;
  int id_bound() const { return static_cast<int>(entries_.size()); }
  const SubfileId& subfile_at(int id) const { return entries_[static_cast<std::size_t>(id)].subfile; }
  // Ids of the placed subfiles of `file`, in placement order.
  const std::vector<int>& ids_of(const FileId& file) const;

  const std::map<SubfileId, Rational>& sizes() const { return sizes_; }
  std::vector<std::pair<SubfileId, Rational>> subfiles_of(const FileId& file) const;

  // Total cached at `user`, in file units.
  Rational memory_of(int user) const;

  // Empty when partition, memory and (if flagged) selfishness hold; otherwise
  // a description of the first violation found.
  std::optional<std::string> invariant_violation() const;

 private:
  struct Entry {
    SubfileId subfile;
    const Rational* size;  // null once removed
  };
  struct SubfileHash {
    std::size_t operator()(const SubfileId& s) const noexcept;
  };
  struct FileHash {
    std::size_t operator()(const FileId& f) const noexcept;
  };
  struct ValueLess {
    bool operator()(const Rational& a, const Rational& b) const { return less_than(a, b); }
  };

  FdsStructure structure_;
  PlacementKind kind_;
  bool selfish_;
  Rational memory_budget_;
  int replication_;
  std::map<SubfileId, Rational> sizes_;
  // Lookup side tables; node-based, so pointers survive a move.
  std::set<Rational, ValueLess> values_;
  std::vector<Entry> entries_;
  std::unordered_map<SubfileId, int, SubfileHash> ids_;
  std::unordered_map<FileId, std::vector<int>, FileHash> file_ids_;
};

// A demand (d, f): user k asks for file W_{f_k, D_k}.
struct DemandInstance {
  std::vector<ClassId> classes;  // D_k at index k - 1
  std::vector<int> files;        // f_k at index k - 1
  std::optional<Permutation> provenance;

  int users() const { return static_cast<int>(classes.size()); }
  FileId requested(int user) const;

  // Throws std::invalid_argument when the demand does not fit the structure
  // (wrong length, D_k not a class containing k, f_k outside [1..F]).
  void validate(const FdsStructure& structure) const;
  bool distinct_files() const;

  std::string to_string() const;
};

// One broadcast transmission: the XOR of its parts, shorter parts
// zero-padded, so its size is the size of the largest part.
struct DeliveryMessage {
  std::vector<SubfileId> parts;
  Rational size;
};

Rational total_load(const std::vector<DeliveryMessage>& messages);

}  // namespace cachelab
