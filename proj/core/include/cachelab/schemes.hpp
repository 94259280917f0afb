#pragma once

// Uncoded placements and delivery schemes, symbolic decoding and worst-case
// load simulation over all distinct-file demands.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cachelab/fds.hpp"
#include "cachelab/placement.hpp"
#include "cachelab/rational.hpp"

namespace cachelab::schemes {

// Unselfish MAN placement: every file split over the t-subsets of [K].
Placement man_placement(const FdsStructure& structure, int t);

// Symmetric selfish placement: every file W_{f,S} split over the t-subsets of S.
Placement selfish_symmetric_placement(const FdsStructure& structure, int t);

// Symmetric selfish placement from a replication profile x over t' in
// [0..alpha]: each subfile with |T| = t' gets x_{t'} / binom(alpha, t').
// Throws std::invalid_argument for negative entries, wrong length or sum != 1.
Placement profile_placement(const FdsStructure& structure, std::span<const Rational> profile);

// XOR over every (t+1)-subset of users. Throws std::invalid_argument unless
// `placement` came from man_placement.
std::vector<DeliveryMessage> man_delivery(const Placement& placement, const DemandInstance& demand);

// Clique cover of the delivery side-information graph. Needed subfiles are
// taken in (subfile, requester) order and each clique grows by the smallest
// compatible vertex.
std::vector<DeliveryMessage> greedy_clique_delivery(const Placement& placement,
                                                    const DemandInstance& demand);

// Symbolic peeling decoder: a user learns a part once every other part of a
// message is known, repeated to a fixpoint. True iff every user ends up with
// all positively sized parts of its requested file.
bool verify_decodability(const Placement& placement, const DemandInstance& demand,
                         const std::vector<DeliveryMessage>& messages);

// Load of sending every uncached part of each requested file on its own.
Rational uncoded_load(const Placement& placement, const DemandInstance& demand);

enum class SchemeKind { kMan, kSelfish, kProfile };

using DeliveryAlgorithm =
    std::function<std::vector<DeliveryMessage>(const Placement&, const DemandInstance&)>;

struct SimulationOptions {
  // Bound on the raw demand space |FDS|^K walked by the enumeration.
  std::uint64_t demand_cap = 2'000'000;
  int jobs = 1;
};

struct SimulationResult {
  Rational worst_case_load;
  bool all_decodable = true;
  std::uint64_t demands_evaluated = 0;
  DemandInstance worst_demand;
};

// |FDS|^K, saturating at UINT64_MAX.
std::uint64_t demand_space_size(const FdsStructure& structure);

// Calls `visit` for every demand in which the K requested files are pairwise
// distinct, in lexicographic order of the per-user choices.
void for_each_distinct_demand(const FdsStructure& structure,
                              const std::function<void(const DemandInstance&)>& visit);

// Maximum delivered load over all distinct-file demands, with every delivery
// checked by verify_decodability. Throws CapExceeded beyond options.demand_cap.
SimulationResult simulate_worst_case(const Placement& placement, const DeliveryAlgorithm& delivery,
                                     const SimulationOptions& options = {});

// kMan: man_placement + man_delivery. kSelfish: selfish_symmetric_placement +
// greedy_clique_delivery. kProfile is rejected (it needs a profile vector).
Rational worst_case_load(const FdsStructure& structure, SchemeKind kind, int t,
                         const SimulationOptions& options = {});

}  // namespace cachelab::schemes
