#include "treediam/graph.hpp"

#include <numeric>
#include <string>

#include "treediam/error.hpp"

namespace treediam {

template <class Label, class Params>
VertexIndex MaterializedGraph<Label, Params>::index_of(const Label& label) const {
  if (auto idx = find(label)) return *idx;
  throw Error(ErrorKind::VertexNotInGraph, "vertex " + to_string(label) + " is not in the graph");
}

template class MaterializedGraph<DiamondAddress, DiamondParams>;
template class MaterializedGraph<TreeVertex, TreeSpec>;

namespace {

// Builds vertices in construction (DFS) order; relabelled canonically afterwards.
struct DiamondBuilder {
  std::uint64_t k;
  unsigned level;
  std::vector<DiamondAddress> labels;
  std::vector<std::pair<VertexIndex, VertexIndex>> edges;
  RefinementPath path;

  void refine(VertexIndex bottom, VertexIndex top) {
    if (path.size() == level) {
      edges.emplace_back(bottom, top);
      return;
    }
    for (std::uint64_t b = 1; b <= k; ++b) {
      const auto mid = static_cast<VertexIndex>(labels.size());
      labels.push_back(DiamondAddress::inner(path, b));
      path.push_back({b, Half::Lower});
      refine(bottom, mid);
      path.back().half = Half::Upper;
      refine(mid, top);
      path.pop_back();
    }
  }
};

}  // namespace

DiamondGraph materialize_diamond(const DiamondParams& params, std::uint64_t vertex_budget) {
  params.validate();
  if (params.branching.is_unbounded()) {
    throw Error(ErrorKind::UnboundedNotMaterializable, "cannot materialize a diamond with unbounded branching");
  }
  const auto count = params.vertex_count();
  if (!count || *count > vertex_budget) {
    throw Error(ErrorKind::BudgetExceeded,
                "D_{" + std::to_string(params.level) + "," + std::to_string(params.branching.value()) + "} has " +
                    (count ? std::to_string(*count) : std::string("more than 2^64")) +
                    " vertices, budget is " + std::to_string(vertex_budget));
  }

  DiamondBuilder builder{params.branching.value(), params.level, {}, {}, {}};
  builder.labels.reserve(*count);
  builder.labels.push_back(DiamondAddress::bottom());
  builder.labels.push_back(DiamondAddress::top());
  builder.refine(0, 1);

  const std::size_t n = builder.labels.size();
  std::vector<VertexIndex> order(n);
  std::iota(order.begin(), order.end(), VertexIndex{0});
  std::sort(order.begin(), order.end(),
            [&](VertexIndex a, VertexIndex b) { return builder.labels[a] < builder.labels[b]; });
  std::vector<VertexIndex> rank(n);
  std::vector<DiamondAddress> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    rank[order[i]] = static_cast<VertexIndex>(i);
    labels.push_back(std::move(builder.labels[order[i]]));
  }
  std::vector<std::vector<VertexIndex>> adjacency(n);
  for (auto [u, v] : builder.edges) {
    adjacency[rank[u]].push_back(rank[v]);
    adjacency[rank[v]].push_back(rank[u]);
  }
  return DiamondGraph(params, std::move(labels), std::move(adjacency));
}

TreeGraph materialize_tree(TreeSpec spec, std::uint64_t vertex_budget) {
  if (spec.depth > kMaxTreeDepth || spec.vertex_count() > vertex_budget) {
    throw Error(ErrorKind::BudgetExceeded, "T_" + std::to_string(spec.depth) + " exceeds the vertex budget of " +
                                               std::to_string(vertex_budget));
  }
  auto labels = enumerate_tree(spec);
  std::vector<std::vector<VertexIndex>> adjacency(labels.size());
  // In length-lex order the children of vertex i sit at 2i+1 and 2i+2.
  for (std::size_t i = 1; i < labels.size(); ++i) {
    const auto parent = static_cast<VertexIndex>((i - 1) / 2);
    adjacency[i].push_back(parent);
    adjacency[parent].push_back(static_cast<VertexIndex>(i));
  }
  return TreeGraph(spec, std::move(labels), std::move(adjacency));
}

std::vector<VertexIndex> subdiamond_vertices(const DiamondGraph& g, const SubdiamondRef& s) {
  validate_subdiamond(s, g.params());
  const DiamondAddress bottom = s.bottom();
  const DiamondAddress top = s.top();
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& a = g.label(v);
    const bool inside = a.is_inner() && a.refinements().size() >= s.path.size() &&
                        std::equal(s.path.begin(), s.path.end(), a.refinements().begin());
    if (inside || a == bottom || a == top) out.push_back(v);
  }
  return out;
}

}  // namespace treediam
