#include "cachelab/schemes.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "cachelab/combinatorics.hpp"
#include "cachelab/error.hpp"
#include "cachelab/index_coding.hpp"

namespace cachelab::schemes {
namespace {

// Sizes here are never negative, so a zero current value is simply replaced.
void raise_to(Rational& current, const Rational& candidate) {
  if (numerator(current) == 0 || less_than(current, candidate)) current = candidate;
}

// (size)-subsets of [1..users], built once per thread and shape.
const std::vector<UserSet>& cached_subsets(int users, int size) {
  thread_local std::map<std::pair<int, int>, std::vector<UserSet>> cache;
  auto it = cache.find({users, size});
  if (it == cache.end()) {
    it = cache.emplace(std::pair{users, size}, subsets_of_size(UserSet::range(users), size)).first;
  }
  return it->second;
}

}  // namespace

Placement man_placement(const FdsStructure& structure, int t) {
  const int users = structure.users();
  if (t < 0 || t > users) throw std::invalid_argument("MAN placement needs t in [0..K]");
  const bool selfish = t == 0 || structure.alpha() == users;
  Placement placement(structure, PlacementKind::kMan, selfish,
                      make_rational(t * structure.library_size(), users), t);
  const Rational piece = make_rational(1, binomial(users, t));
  const auto subsets = subsets_of_size(structure.all_users(), t);
  for (const FileId& file : all_files(structure)) {
    for (UserSet cached_by : subsets) placement.set_size(SubfileId{file, cached_by}, piece);
  }
  return placement;
}

Placement selfish_symmetric_placement(const FdsStructure& structure, int t) {
  const int alpha = structure.alpha();
  if (t < 0 || t > alpha) {
    throw std::invalid_argument("selfish placement needs t in [0..alpha]");
  }
  Placement placement(structure, PlacementKind::kSelfish, true,
                      make_rational(t * structure.library_size(), structure.users()), t);
  const Rational piece = make_rational(1, binomial(alpha, t));
  for (const FileId& file : all_files(structure)) {
    for (UserSet cached_by : subsets_of_size(file.cls, t)) {
      placement.set_size(SubfileId{file, cached_by}, piece);
    }
  }
  return placement;
}

Placement profile_placement(const FdsStructure& structure, std::span<const Rational> profile) {
  const int alpha = structure.alpha();
  if (profile.size() != static_cast<std::size_t>(alpha + 1)) {
    throw std::invalid_argument("profile needs alpha + 1 entries");
  }
  Rational sum = 0;
  Rational mean = 0;
  for (int t = 0; t <= alpha; ++t) {
    const Rational& x = profile[static_cast<std::size_t>(t)];
    if (x < 0) throw std::invalid_argument("profile entries must be nonnegative");
    sum += x;
    mean += x * t;
  }
  if (sum != 1) throw std::invalid_argument("profile must sum to 1, got " + to_string(sum));

  Placement placement(structure, PlacementKind::kProfile, true,
                      mean * make_rational(structure.library_size(), structure.users()));
  for (const FileId& file : all_files(structure)) {
    for (UserSet cached_by : all_subsets(file.cls)) {
      const int t = cached_by.size();
      placement.set_size(SubfileId{file, cached_by},
                         profile[static_cast<std::size_t>(t)] / binomial(alpha, t));
    }
  }
  return placement;
}

std::vector<DeliveryMessage> man_delivery(const Placement& placement,
                                          const DemandInstance& demand) {
  if (placement.kind() != PlacementKind::kMan) {
    throw std::invalid_argument("MAN delivery needs a MAN placement, got " +
                                to_string(placement.kind()));
  }
  const FdsStructure& structure = placement.structure();
  demand.validate(structure);
  std::vector<DeliveryMessage> messages;
  const int t = placement.replication();
  if (t + 1 > structure.users()) return messages;
  const auto& groups = cached_subsets(structure.users(), t + 1);
  messages.reserve(groups.size());
  for (UserSet group : groups) {
    DeliveryMessage message;
    message.parts.reserve(static_cast<std::size_t>(t + 1));
    const Rational* largest = nullptr;
    for (std::uint32_t rest = group.mask(); rest != 0; rest &= rest - 1) {
      const int k = std::countr_zero(rest) + 1;
      const SubfileId part{demand.requested(k), group.without(k)};
      const Rational* size = placement.find(part);
      if (size == nullptr) continue;
      message.parts.push_back(part);
      // Interned sizes: equal values share an address.
      if (largest == nullptr || (size != largest && less_than(*largest, *size))) largest = size;
    }
    if (largest == nullptr) continue;
    message.size = *largest;
    messages.push_back(std::move(message));
  }
  return messages;
}

std::vector<DeliveryMessage> greedy_clique_delivery(const Placement& placement,
                                                    const DemandInstance& demand) {
  const auto graph = index_coding::build_delivery_graph(placement, demand);
  const int n = static_cast<int>(graph.vertex_count());
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  std::vector<DeliveryMessage> messages;
  for (int seed = 0; seed < n; ++seed) {
    if (covered[static_cast<std::size_t>(seed)]) continue;
    std::vector<int> clique{seed};
    covered[static_cast<std::size_t>(seed)] = 1;
    for (int candidate = seed + 1; candidate < n; ++candidate) {
      if (covered[static_cast<std::size_t>(candidate)]) continue;
      const bool fits = std::all_of(clique.begin(), clique.end(), [&](int member) {
        return graph.has_edge(member, candidate) && graph.has_edge(candidate, member);
      });
      if (fits) {
        clique.push_back(candidate);
        covered[static_cast<std::size_t>(candidate)] = 1;
      }
    }
    DeliveryMessage message;
    message.size = 0;
    for (int v : clique) {
      message.parts.push_back(graph.vertex(v).subfile);
      raise_to(message.size, graph.vertex(v).size);
    }
    messages.push_back(std::move(message));
  }
  return messages;
}

bool verify_decodability(const Placement& placement, const DemandInstance& demand,
                         const std::vector<DeliveryMessage>& messages) {
  // Scratch reused across calls. `local` maps placement ids to a dense index
  // over the parts actually sent and is restored to -1 before returning.
  thread_local std::vector<int> local;
  thread_local std::vector<int> parts;        // message m owns parts[start[m] .. start[m+1])
  thread_local std::vector<std::size_t> start;
  thread_local std::vector<int> seen_ids;
  thread_local std::vector<UserSet> holders;
  thread_local std::vector<std::size_t> occurs_start;  // local part -> its messages
  thread_local std::vector<int> occurs;
  thread_local std::vector<int> missing;
  thread_local std::vector<char> known;
  thread_local std::vector<int> ready;
  if (local.size() < static_cast<std::size_t>(placement.id_bound())) {
    local.resize(static_cast<std::size_t>(placement.id_bound()), -1);
  }
  parts.clear();
  start.assign(1, 0);
  seen_ids.clear();
  holders.clear();

  // A part with no placed content carries nothing and needs no decoding.
  for (const auto& message : messages) {
    for (const SubfileId& part : message.parts) {
      const int id = placement.id_of(part);
      if (id < 0) continue;
      int& slot = local[static_cast<std::size_t>(id)];
      if (slot < 0) {
        slot = static_cast<int>(holders.size());
        seen_ids.push_back(id);
        holders.push_back(part.cached_by);
      }
      parts.push_back(slot);
    }
    start.push_back(parts.size());
  }
  const std::size_t count = holders.size();
  const std::size_t message_count = start.size() - 1;

  // Reverse index: which messages mention each part.
  occurs_start.assign(count + 1, 0);
  for (int p : parts) ++occurs_start[static_cast<std::size_t>(p) + 1];
  for (std::size_t i = 0; i < count; ++i) occurs_start[i + 1] += occurs_start[i];
  occurs.assign(parts.size(), 0);
  {
    std::vector<std::size_t> fill(occurs_start.begin(), occurs_start.end() - 1);
    for (std::size_t m = 0; m < message_count; ++m) {
      for (std::size_t j = start[m]; j < start[m + 1]; ++j) {
        occurs[fill[static_cast<std::size_t>(parts[j])]++] = static_cast<int>(m);
      }
    }
  }

  bool ok = true;
  for (int k = 1; ok && k <= demand.users(); ++k) {
    // Peeling: a message with exactly one unknown part reveals it.
    known.assign(count, 0);
    for (std::size_t i = 0; i < count; ++i) known[i] = holders[i].contains(k);
    missing.assign(message_count, 0);
    ready.clear();
    for (std::size_t m = 0; m < message_count; ++m) {
      for (std::size_t j = start[m]; j < start[m + 1]; ++j) {
        if (!known[static_cast<std::size_t>(parts[j])]) ++missing[m];
      }
      if (missing[m] == 1) ready.push_back(static_cast<int>(m));
    }
    while (!ready.empty()) {
      const auto m = static_cast<std::size_t>(ready.back());
      ready.pop_back();
      if (missing[m] != 1) continue;
      int learned = -1;
      for (std::size_t j = start[m]; j < start[m + 1]; ++j) {
        if (!known[static_cast<std::size_t>(parts[j])]) learned = parts[j];
      }
      known[static_cast<std::size_t>(learned)] = 1;
      for (std::size_t o = occurs_start[static_cast<std::size_t>(learned)];
           o < occurs_start[static_cast<std::size_t>(learned) + 1]; ++o) {
        const auto other = static_cast<std::size_t>(occurs[o]);
        // A part listed twice in one message is counted once per listing.
        if (--missing[other] == 1) ready.push_back(static_cast<int>(other));
      }
    }
    for (int id : placement.ids_of(demand.requested(k))) {
      if (placement.subfile_at(id).cached_by.contains(k)) continue;
      const int slot = local[static_cast<std::size_t>(id)];
      if (slot < 0 || !known[static_cast<std::size_t>(slot)]) {
        ok = false;
        break;
      }
    }
  }

  for (int id : seen_ids) local[static_cast<std::size_t>(id)] = -1;
  return ok;
}

Rational uncoded_load(const Placement& placement, const DemandInstance& demand) {
  Rational total = 0;
  for (int k = 1; k <= demand.users(); ++k) {
    for (const auto& [subfile, size] : placement.subfiles_of(demand.requested(k))) {
      if (!subfile.cached_by.contains(k)) total += size;
    }
  }
  return total;
}

std::uint64_t demand_space_size(const FdsStructure& structure) {
  const auto base = static_cast<std::uint64_t>(structure.fds_size());
  std::uint64_t total = 1;
  for (int k = 0; k < structure.users(); ++k) {
    if (total > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= base;
  }
  return total;
}

namespace {

struct Choice {
  int global;  // index of the file in all_files order
  FileId file;
};

std::vector<std::vector<Choice>> user_choices(const FdsStructure& structure) {
  const auto classes = enumerate_classes(structure);
  const int files = structure.files_per_class();
  std::vector<std::vector<Choice>> choices(static_cast<std::size_t>(structure.users()));
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (int k : classes[c].members()) {
      for (int f = 1; f <= files; ++f) {
        choices[static_cast<std::size_t>(k - 1)].push_back(
            Choice{static_cast<int>(c) * files + (f - 1), FileId{f, classes[c]}});
      }
    }
  }
  return choices;
}

class DemandWalker {
 public:
  DemandWalker(const FdsStructure& structure, std::function<void(const DemandInstance&)> visit)
      : choices_(user_choices(structure)),
        used_(static_cast<std::size_t>(structure.library_size()), 0),
        visit_(std::move(visit)) {
    demand_.classes.resize(choices_.size());
    demand_.files.resize(choices_.size());
  }

  std::size_t first_user_choices() const { return choices_.front().size(); }

  // Walk every completion whose first user picks choice `first`.
  void walk_from(std::size_t first) {
    place(0, choices_[0][first]);
    descend(1);
    used_[static_cast<std::size_t>(choices_[0][first].global)] = 0;
  }

 private:
  void place(std::size_t user, const Choice& c) {
    used_[static_cast<std::size_t>(c.global)] = 1;
    demand_.classes[user] = c.file.cls;
    demand_.files[user] = c.file.index;
  }

  void descend(std::size_t user) {
    if (user == choices_.size()) {
      visit_(demand_);
      return;
    }
    for (const Choice& c : choices_[user]) {
      if (used_[static_cast<std::size_t>(c.global)]) continue;
      place(user, c);
      descend(user + 1);
      used_[static_cast<std::size_t>(c.global)] = 0;
    }
  }

  std::vector<std::vector<Choice>> choices_;
  std::vector<char> used_;
  DemandInstance demand_;
  std::function<void(const DemandInstance&)> visit_;
};

}  // namespace

void for_each_distinct_demand(const FdsStructure& structure,
                              const std::function<void(const DemandInstance&)>& visit) {
  DemandWalker walker(structure, visit);
  for (std::size_t i = 0; i < walker.first_user_choices(); ++i) walker.walk_from(i);
}

SimulationResult simulate_worst_case(const Placement& placement, const DeliveryAlgorithm& delivery,
                                     const SimulationOptions& options) {
  const FdsStructure& structure = placement.structure();
  const std::uint64_t space = demand_space_size(structure);
  if (space > options.demand_cap) {
    throw CapExceeded("worst-case demand enumeration", space, options.demand_cap);
  }

  struct Partial {
    SimulationResult result;
    bool seen = false;
    std::size_t first = 0;
    std::exception_ptr error;
  };

  const auto run_share = [&](int worker, int workers, Partial& out) {
    try {
      std::size_t current_first = 0;
      DemandWalker walker(structure, [&](const DemandInstance& demand) {
        const auto messages = delivery(placement, demand);
        const Rational load = total_load(messages);
        ++out.result.demands_evaluated;
        if (!verify_decodability(placement, demand, messages)) out.result.all_decodable = false;
        if (!out.seen ||
            less_than(out.result.worst_case_load, load)) {
          out.seen = true;
          out.first = current_first;
          out.result.worst_case_load = load;
          out.result.worst_demand = demand;
        }
      });
      for (std::size_t i = static_cast<std::size_t>(worker); i < walker.first_user_choices();
           i += static_cast<std::size_t>(workers)) {
        current_first = i;
        walker.walk_from(i);
      }
    } catch (...) {
      out.error = std::current_exception();
    }
  };

  const int workers = std::max(1, options.jobs);
  std::vector<Partial> partials(static_cast<std::size_t>(workers));
  if (workers == 1) {
    run_share(0, 1, partials[0]);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back(run_share, w, workers, std::ref(partials[static_cast<std::size_t>(w)]));
    }
    for (auto& th : threads) th.join();
  }

  SimulationResult merged;
  merged.worst_case_load = 0;
  bool seen = false;
  std::size_t best_first = 0;
  for (auto& p : partials) {
    if (p.error) std::rethrow_exception(p.error);
    merged.demands_evaluated += p.result.demands_evaluated;
    merged.all_decodable = merged.all_decodable && p.result.all_decodable;
    if (!p.seen) continue;
    // Ties resolve to the lexicographically first demand, independent of workers.
    if (!seen || p.result.worst_case_load > merged.worst_case_load ||
        (p.result.worst_case_load == merged.worst_case_load && p.first < best_first)) {
      seen = true;
      best_first = p.first;
      merged.worst_case_load = p.result.worst_case_load;
      merged.worst_demand = p.result.worst_demand;
    }
  }
  return merged;
}

Rational worst_case_load(const FdsStructure& structure, SchemeKind kind, int t,
                         const SimulationOptions& options) {
  SimulationResult result;
  switch (kind) {
    case SchemeKind::kMan:
      result = simulate_worst_case(man_placement(structure, t), man_delivery, options);
      break;
    case SchemeKind::kSelfish:
      result = simulate_worst_case(selfish_symmetric_placement(structure, t),
                                   greedy_clique_delivery, options);
      break;
    case SchemeKind::kProfile:
      throw std::invalid_argument("profile scheme needs a profile; use simulate_worst_case");
  }
  if (!result.all_decodable) {
    throw std::logic_error("delivery failed symbolic decoding for some demand");
  }
  return result.worst_case_load;
}

}  // namespace cachelab::schemes
