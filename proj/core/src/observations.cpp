#include "treediam/observations.hpp"

#include <algorithm>
#include <string>

#include "treediam/error.hpp"
#include "treediam/metric.hpp"

namespace treediam {

NeighborhoodReport check_neighborhood_structure(const DiamondGraph& g, const DiamondAddress& v) {
  const DiamondParams& params = g.params();
  const auto generation = generation_number(v, params);
  if (!generation) throw Error(ErrorKind::NoGeneration, to_string(v) + " has no generation number");
  const VertexIndex centre = g.index_of(v);

  NeighborhoodReport report;
  report.vertex = v;
  report.generation = *generation;
  report.radius = std::uint64_t{1} << (*generation - 1);

  const SubdiamondRef parent{v.refinements()};
  const SubdiamondRef lower = parent.child(v.middle_branch(), Half::Lower);
  const SubdiamondRef upper = parent.child(v.middle_branch(), Half::Upper);
  const std::vector<VertexIndex> lower_vs = subdiamond_vertices(g, lower);
  const std::vector<VertexIndex> upper_vs = subdiamond_vertices(g, upper);
  report.lower_size = lower_vs.size();
  report.upper_size = upper_vs.size();

  std::vector<VertexIndex> overlap;
  std::set_intersection(lower_vs.begin(), lower_vs.end(), upper_vs.begin(), upper_vs.end(),
                        std::back_inserter(overlap));
  report.overlap_is_vertex = overlap == std::vector<VertexIndex>{centre};

  std::vector<VertexIndex> joined;
  std::set_union(lower_vs.begin(), lower_vs.end(), upper_vs.begin(), upper_vs.end(), std::back_inserter(joined));

  const std::vector<std::uint32_t> dist = bfs_distances(g, centre);
  std::vector<VertexIndex> ball;
  for (VertexIndex u = 0; u < g.vertex_count(); ++u) {
    if (dist[u] <= report.radius) ball.push_back(u);
  }
  report.ball_size = ball.size();
  report.ball_equals_union = ball == joined;
  if (!report.ball_equals_union) {
    std::vector<VertexIndex> diff;
    std::set_symmetric_difference(ball.begin(), ball.end(), joined.begin(), joined.end(), std::back_inserter(diff));
    report.witness = g.label(diff.front());
  }
  return report;
}

ComponentReport check_component_diameters(const DiamondGraph& g, unsigned d) {
  const DiamondParams& params = g.params();
  if (d < 1 || d > params.level) {
    throw Error(ErrorKind::OutOfRange,
                "generation " + std::to_string(d) + " outside 1.." + std::to_string(params.level));
  }
  ComponentReport report;
  report.d = d;
  report.bound = std::uint64_t{1} << d;

  const std::size_t n = g.vertex_count();
  std::vector<bool> kept(n, true);
  for (const DiamondAddress& z : generation_members(d, params)) {
    kept[g.index_of(z)] = false;
    ++report.removed;
  }

  std::vector<int> component(n, -1);
  for (VertexIndex s = 0; s < n; ++s) {
    if (!kept[s] || component[s] >= 0) continue;
    const int id = static_cast<int>(report.components++);
    const std::vector<std::uint32_t> reach = bfs_distances(g, s, kept);
    std::vector<VertexIndex> members;
    for (VertexIndex u = 0; u < n; ++u) {
      if (reach[u] != kUnreachable) {
        component[u] = id;
        members.push_back(u);
      }
    }
    std::uint64_t induced = 0;
    std::uint64_t ambient = 0;
    std::pair<VertexIndex, VertexIndex> far{s, s};
    for (VertexIndex a : members) {
      const std::vector<std::uint32_t> da = bfs_distances(g, a, kept);
      for (VertexIndex b : members) {
        if (da[b] > induced) {
          induced = da[b];
          far = {a, b};
        }
        ambient = std::max(ambient, diamond_distance(g.label(a), g.label(b), params));
      }
    }
    if (induced > ambient) ++report.metric_discrepancies;
    if (!report.witness || induced > report.max_induced_diameter) {
      report.witness = std::pair{g.label(far.first), g.label(far.second)};
    }
    report.max_induced_diameter = std::max(report.max_induced_diameter, induced);
    report.max_ambient_diameter = std::max(report.max_ambient_diameter, ambient);
  }
  return report;
}

}  // namespace treediam
