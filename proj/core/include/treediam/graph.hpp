#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "treediam/diamond.hpp"
#include "treediam/tree.hpp"

namespace treediam {

using VertexIndex = std::uint32_t;

// Explicit adjacency for a small graph. Vertices are stored sorted by label,
// so the index order is the canonical vertex order and label lookup is a
// binary search. Neighbour lists are sorted.
template <class Label, class Params>
class MaterializedGraph {
 public:
  MaterializedGraph(Params params, std::vector<Label> labels, std::vector<std::vector<VertexIndex>> adjacency)
      : params_(std::move(params)), labels_(std::move(labels)), adjacency_(std::move(adjacency)) {
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  }

  const Params& params() const noexcept { return params_; }
  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto& nbrs : adjacency_) twice += nbrs.size();
    return twice / 2;
  }

  const std::vector<Label>& labels() const noexcept { return labels_; }
  const Label& label(VertexIndex v) const { return labels_.at(v); }
  std::span<const VertexIndex> neighbors(VertexIndex v) const { return adjacency_.at(v); }
  std::size_t degree(VertexIndex v) const { return adjacency_.at(v).size(); }

  std::optional<VertexIndex> find(const Label& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || !(*it == label)) return std::nullopt;
    return static_cast<VertexIndex>(it - labels_.begin());
  }
  // Throws VertexNotInGraph.
  VertexIndex index_of(const Label& label) const;

  bool adjacent(VertexIndex u, VertexIndex v) const {
    const auto& nbrs = adjacency_.at(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  // Each undirected edge once, as (smaller index, larger index), sorted.
  std::vector<std::pair<VertexIndex, VertexIndex>> edges() const {
    std::vector<std::pair<VertexIndex, VertexIndex>> out;
    for (VertexIndex u = 0; u < adjacency_.size(); ++u) {
      for (VertexIndex v : adjacency_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

 private:
  Params params_;
  std::vector<Label> labels_;
  std::vector<std::vector<VertexIndex>> adjacency_;
};

using DiamondGraph = MaterializedGraph<DiamondAddress, DiamondParams>;
using TreeGraph = MaterializedGraph<TreeVertex, TreeSpec>;

// Explicit D_{m,k}. Throws UnboundedNotMaterializable or BudgetExceeded.
DiamondGraph materialize_diamond(const DiamondParams& params, std::uint64_t vertex_budget = kDefaultVertexBudget);

TreeGraph materialize_tree(TreeSpec spec, std::uint64_t vertex_budget = kDefaultVertexBudget);

// Indices of the vertices of `s` (endpoints included), ascending.
std::vector<VertexIndex> subdiamond_vertices(const DiamondGraph& g, const SubdiamondRef& s);

}  // namespace treediam
