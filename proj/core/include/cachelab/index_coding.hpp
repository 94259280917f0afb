#pragma once

// Side-information graphs of the index-coding problem induced by a demand,
// acyclic vertex sets and the acyclic-subgraph lower bound on broadcast load.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cachelab/fds.hpp"
#include "cachelab/placement.hpp"
#include "cachelab/rational.hpp"

namespace cachelab::index_coding {

// A desired message: `subfile` wanted by user `requester`.
struct DesiredMessage {
  int requester = 0;
  SubfileId subfile;

  bool operator==(const DesiredMessage&) const = default;
};

struct Vertex {
  int requester = 0;
  SubfileId subfile;
  Rational size;
};

using VertexSet = std::vector<int>;

// Directed graph on desired messages with an edge i -> j whenever message i
// is cached by the user requesting message j. Immutable once built.
class SideInfoGraph {
 public:
  explicit SideInfoGraph(std::vector<Vertex> vertices);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const;
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(int i) const { return vertices_.at(static_cast<std::size_t>(i)); }

  bool has_edge(int from, int to) const;
  const std::vector<int>& successors(int i) const { return out_.at(static_cast<std::size_t>(i)); }

  std::optional<int> index_of(const DesiredMessage& message) const;
  // Throws std::invalid_argument if any message is not a vertex.
  VertexSet indices_of(const std::vector<DesiredMessage>& messages) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<std::vector<int>> out_;
  std::vector<char> adjacency_;
};

// Vertices W_{f_k, D_k, T} for T subset of D_k without k, grouped by user and
// ordered by T. Sizes are all zero; the shape depends only on the demand.
SideInfoGraph build_graph(const FdsStructure& structure, const DemandInstance& demand);

// Same vertex set, sizes taken from `placement` (zero where not placed).
SideInfoGraph build_graph(const Placement& placement, const DemandInstance& demand);

// Every positively sized subfile a user still needs, for any placement
// (including unselfish ones). Ordered by (subfile, requester).
SideInfoGraph build_delivery_graph(const Placement& placement, const DemandInstance& demand);

// The acyclic set induced by the user ordering `order`: the k-th user in the
// order contributes W_{f, D, T} for every T inside its class that avoids the
// first k users of the order.
std::vector<DesiredMessage> ordered_acyclic_set(const DemandInstance& demand,
                                                const Permutation& order);

bool is_acyclic(const SideInfoGraph& graph, std::span<const int> vertex_set);

// Sum of vertex sizes. Throws std::invalid_argument for a set with a cycle.
Rational bound_from_set(const SideInfoGraph& graph, std::span<const int> vertex_set);

struct MaisResult {
  Rational value;
  VertexSet witness;
};

inline constexpr std::size_t kDefaultMaisCap = 20;

// Maximum-weight acyclic induced subgraph by exhaustive branch and bound.
// Throws CapExceeded when the graph has more than `cap` vertices.
MaisResult mais(const SideInfoGraph& graph, std::size_t cap = kDefaultMaisCap);

// Graphviz digraph; vertex labels "u{k}:W_{f,S,T}", weights as "p/q".
std::string to_dot(const SideInfoGraph& graph);

}  // namespace cachelab::index_coding
