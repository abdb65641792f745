#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "treediam/diamond.hpp"
#include "treediam/graph.hpp"
#include "treediam/tree.hpp"

namespace treediam {

using Distance = std::uint64_t;

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

// |u| + |v| - 2 |longest common prefix|.
Distance tree_distance(const TreeVertex& u, const TreeVertex& v) noexcept;

// Distances from a vertex to the bottom and top of a subdiamond of level
// `level`; to_bottom + to_top == 2^level.
struct BoundaryProfile {
  Distance to_bottom = 0;
  Distance to_top = 0;
  unsigned level = 0;

  friend bool operator==(const BoundaryProfile&, const BoundaryProfile&) = default;
};

// Throws VertexNotInSubdiamond when `v` is not in `s`.
BoundaryProfile boundary_profile(const DiamondAddress& v, const SubdiamondRef& s, const DiamondParams& params);

// Exact shortest-path distance in D_{m,k} in O(m) time without building the
// graph. Independent of k, so it also serves unbounded branching.
Distance diamond_distance(const DiamondAddress& u, const DiamondAddress& v, const DiamondParams& params);

// Breadth-first distances from `source` (kUnreachable where disconnected).
// `allowed`, if non-empty, restricts the search to vertices flagged true.
template <class Graph>
std::vector<std::uint32_t> bfs_distances(const Graph& g, VertexIndex source, const std::vector<bool>& allowed = {}) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  std::deque<VertexIndex> queue{source};
  dist.at(source) = 0;
  while (!queue.empty()) {
    const VertexIndex u = queue.front();
    queue.pop_front();
    for (VertexIndex w : g.neighbors(u)) {
      if (dist[w] != kUnreachable || (!allowed.empty() && !allowed[w])) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

// Reference oracle on an explicit graph. Throws VertexNotInGraph.
template <class Graph, class Label>
Distance bfs_distance(const Graph& g, const Label& u, const Label& v) {
  const VertexIndex a = g.index_of(u);
  const VertexIndex b = g.index_of(v);
  return bfs_distances(g, a)[b];
}

// Dense symmetric matrix of all-pairs distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  std::uint32_t& at(std::size_t i, std::size_t j) { return data_.at(i * n_ + j); }
  const std::uint32_t* row(std::size_t i) const noexcept { return data_.data() + i * n_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> data_;
};

template <class Graph>
DistanceMatrix all_pairs_bfs(const Graph& g) {
  DistanceMatrix m(g.vertex_count());
  for (VertexIndex s = 0; s < g.vertex_count(); ++s) {
    const auto d = bfs_distances(g, s);
    for (VertexIndex t = 0; t < g.vertex_count(); ++t) m.at(s, t) = d[t];
  }
  return m;
}

// All-pairs matrix over a diamond's vertices computed with the oracle.
DistanceMatrix all_pairs_oracle(const DiamondGraph& g);

}  // namespace treediam
