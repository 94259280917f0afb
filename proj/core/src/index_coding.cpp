#include "cachelab/index_coding.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cachelab/error.hpp"

namespace cachelab::index_coding {

SideInfoGraph::SideInfoGraph(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  out_.assign(n, {});
  adjacency_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (vertices_[i].subfile.cached_by.contains(vertices_[j].requester)) {
        out_[i].push_back(static_cast<int>(j));
        adjacency_[i * n + j] = 1;
      }
    }
  }
}

std::size_t SideInfoGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& succ : out_) total += succ.size();
  return total;
}

bool SideInfoGraph::has_edge(int from, int to) const {
  const std::size_t n = vertices_.size();
  return adjacency_.at(static_cast<std::size_t>(from) * n + static_cast<std::size_t>(to)) != 0;
}

std::optional<int> SideInfoGraph::index_of(const DesiredMessage& message) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].requester == message.requester && vertices_[i].subfile == message.subfile) {
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

VertexSet SideInfoGraph::indices_of(const std::vector<DesiredMessage>& messages) const {
  VertexSet out;
  out.reserve(messages.size());
  for (const auto& m : messages) {
    const auto index = index_of(m);
    if (!index) {
      throw std::invalid_argument("message " + m.subfile.to_string() + " for user " +
                                  std::to_string(m.requester) + " is not a vertex");
    }
    out.push_back(*index);
  }
  return out;
}

namespace {

std::vector<Vertex> demand_vertices(const FdsStructure& structure, const DemandInstance& demand,
                                    const Placement* placement) {
  demand.validate(structure);
  std::vector<Vertex> vertices;
  for (int k = 1; k <= demand.users(); ++k) {
    const FileId file = demand.requested(k);
    for (UserSet t : all_subsets(file.cls.without(k))) {
      const SubfileId subfile{file, t};
      vertices.push_back(Vertex{k, subfile, placement ? placement->size(subfile) : Rational(0)});
    }
  }
  return vertices;
}

}  // namespace

SideInfoGraph build_graph(const FdsStructure& structure, const DemandInstance& demand) {
  return SideInfoGraph(demand_vertices(structure, demand, nullptr));
}

SideInfoGraph build_graph(const Placement& placement, const DemandInstance& demand) {
  return SideInfoGraph(demand_vertices(placement.structure(), demand, &placement));
}

SideInfoGraph build_delivery_graph(const Placement& placement, const DemandInstance& demand) {
  demand.validate(placement.structure());
  std::vector<Vertex> vertices;
  for (int k = 1; k <= demand.users(); ++k) {
    for (auto& [subfile, size] : placement.subfiles_of(demand.requested(k))) {
      if (!subfile.cached_by.contains(k)) vertices.push_back(Vertex{k, subfile, size});
    }
  }
  std::sort(vertices.begin(), vertices.end(), [](const Vertex& a, const Vertex& b) {
    if (a.subfile != b.subfile) return a.subfile < b.subfile;
    return a.requester < b.requester;
  });
  return SideInfoGraph(std::move(vertices));
}

std::vector<DesiredMessage> ordered_acyclic_set(const DemandInstance& demand,
                                                const Permutation& order) {
  if (order.size() != demand.users()) {
    throw std::invalid_argument("user ordering has the wrong length");
  }
  std::vector<DesiredMessage> out;
  UserSet seen;
  for (int k = 1; k <= order.size(); ++k) {
    const int user = order(k);
    seen = seen.with(user);
    const FileId file = demand.requested(user);
    for (UserSet t : all_subsets(file.cls - seen)) {
      out.push_back(DesiredMessage{user, SubfileId{file, t}});
    }
  }
  return out;
}

bool is_acyclic(const SideInfoGraph& graph, std::span<const int> vertex_set) {
  const int n = static_cast<int>(graph.vertex_count());
  std::vector<char> member(static_cast<std::size_t>(n), 0);
  for (int v : vertex_set) {
    if (v < 0 || v >= n) throw std::out_of_range("vertex index outside the graph");
    member[static_cast<std::size_t>(v)] = 1;
  }
  // Kahn's algorithm restricted to the induced subgraph.
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  int size = 0;
  for (int v = 0; v < n; ++v) {
    if (!member[static_cast<std::size_t>(v)]) continue;
    ++size;
    for (int w : graph.successors(v)) {
      if (member[static_cast<std::size_t>(w)]) ++indegree[static_cast<std::size_t>(w)];
    }
  }
  std::vector<int> ready;
  for (int v = 0; v < n; ++v) {
    if (member[static_cast<std::size_t>(v)] && indegree[static_cast<std::size_t>(v)] == 0) {
      ready.push_back(v);
    }
  }
  int removed = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++removed;
    for (int w : graph.successors(v)) {
      if (member[static_cast<std::size_t>(w)] && --indegree[static_cast<std::size_t>(w)] == 0) {
        ready.push_back(w);
      }
    }
  }
  return removed == size;
}

Rational bound_from_set(const SideInfoGraph& graph, std::span<const int> vertex_set) {
  if (!is_acyclic(graph, vertex_set)) {
    throw std::invalid_argument("vertex set contains a directed cycle");
  }
  VertexSet unique(vertex_set.begin(), vertex_set.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  Rational total = 0;
  for (int v : unique) total += graph.vertex(v).size;
  return total;
}

namespace {

// Branch and bound over positively weighted vertices, weights scaled to a
// common integer denominator.
class MaisSearch {
 public:
  MaisSearch(std::vector<std::int64_t> weights, std::vector<std::uint64_t> succ,
             std::vector<std::uint64_t> pred)
      : weights_(std::move(weights)), succ_(std::move(succ)), pred_(std::move(pred)) {
    const std::size_t n = weights_.size();
    suffix_.assign(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) suffix_[i] = suffix_[i + 1] + weights_[i];
  }

  void run() { descend(0, 0, 0); }

  std::int64_t best() const { return best_; }
  std::uint64_t best_set() const { return best_set_; }

 private:
  bool closes_cycle(std::size_t v, std::uint64_t chosen) const {
    // v joins `chosen` safely unless some chosen vertex reachable from v
    // points back at v.
    std::uint64_t reach = succ_[v] & chosen;
    std::uint64_t frontier = reach;
    while (frontier != 0) {
      if ((reach & pred_[v]) != 0) return true;
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f != 0; f &= f - 1) {
        next |= succ_[static_cast<std::size_t>(std::countr_zero(f))] & chosen;
      }
      frontier = next & ~reach;
      reach |= next;
    }
    return (reach & pred_[v]) != 0;
  }

  void descend(std::size_t i, std::uint64_t chosen, std::int64_t value) {
    if (value > best_) {
      best_ = value;
      best_set_ = chosen;
    }
    if (i == weights_.size() || value + suffix_[i] <= best_) return;
    if (!closes_cycle(i, chosen)) {
      descend(i + 1, chosen | (std::uint64_t{1} << i), value + weights_[i]);
    }
    descend(i + 1, chosen, value);
  }

  std::vector<std::int64_t> weights_;
  std::vector<std::uint64_t> succ_;
  std::vector<std::uint64_t> pred_;
  std::vector<std::int64_t> suffix_;
  std::int64_t best_ = 0;
  std::uint64_t best_set_ = 0;
};

}  // namespace

MaisResult mais(const SideInfoGraph& graph, std::size_t cap) {
  if (graph.vertex_count() > cap) {
    throw CapExceeded("maximum acyclic induced subgraph search", graph.vertex_count(), cap);
  }
  if (graph.vertex_count() > 64) {
    throw CapExceeded("maximum acyclic induced subgraph search", graph.vertex_count(), 64);
  }
  // Zero-size vertices never change the value, so only positive ones are searched.
  std::vector<int> active;
  for (int v = 0; v < static_cast<int>(graph.vertex_count()); ++v) {
    if (graph.vertex(v).size > 0) active.push_back(v);
  }
  std::stable_sort(active.begin(), active.end(), [&](int a, int b) {
    return graph.vertex(a).size > graph.vertex(b).size;
  });

  BigInt denominator = 1;
  for (int v : active) {
    const BigInt d = boost::multiprecision::denominator(graph.vertex(v).size);
    denominator = denominator / boost::multiprecision::gcd(denominator, d) * d;
  }
  std::vector<std::int64_t> weights;
  BigInt total = 0;
  for (int v : active) {
    const Rational scaled = graph.vertex(v).size * Rational(denominator);
    const BigInt w = boost::multiprecision::numerator(scaled);
    total += w;
    weights.push_back(0);
    if (total > std::numeric_limits<std::int64_t>::max()) {
      throw std::overflow_error("vertex weights too fine-grained for the search");
    }
    weights.back() = w.convert_to<std::int64_t>();
  }

  const std::size_t n = active.size();
  std::vector<std::uint64_t> succ(n, 0);
  std::vector<std::uint64_t> pred(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && graph.has_edge(active[a], active[b])) {
        succ[a] |= std::uint64_t{1} << b;
        pred[b] |= std::uint64_t{1} << a;
      }
    }
  }

  MaisSearch search(std::move(weights), std::move(succ), std::move(pred));
  search.run();

  MaisResult result;
  result.value = Rational(BigInt(search.best()), denominator);
  for (std::uint64_t s = search.best_set(); s != 0; s &= s - 1) {
    result.witness.push_back(active[static_cast<std::size_t>(std::countr_zero(s))]);
  }
  std::sort(result.witness.begin(), result.witness.end());
  return result;
}

std::string to_dot(const SideInfoGraph& graph) {
  std::ostringstream out;
  out << "digraph side_information {\n";
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    const Vertex& v = graph.vertices()[i];
    out << "  v" << i << " [label=\"u" << v.requester << ":" << v.subfile.to_string()
        << "\", weight=\"" << to_string(v.size) << "\"];\n";
  }
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    for (int j : graph.successors(static_cast<int>(i))) {
      out << "  v" << i << " -> v" << j << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace cachelab::index_coding
