#pragma once

#include <cstdint>
#include <optional>

#include "treediam/diamond.hpp"
#include "treediam/graph.hpp"

namespace treediam {

// Compares the closed ball of radius 2^(d-1) around a generation-d vertex v
// with the union of the two level-(d-1) subdiamonds meeting at v: the one
// with v on top and the one with v at the bottom.
struct NeighborhoodReport {
  DiamondAddress vertex;
  unsigned generation = 0;
  std::uint64_t radius = 0;
  std::size_t ball_size = 0;
  std::size_t lower_size = 0;  // subdiamond with v as its top
  std::size_t upper_size = 0;  // subdiamond with v as its bottom
  bool ball_equals_union = false;
  bool overlap_is_vertex = false;
  // A vertex in exactly one of the ball and the union, when they differ.
  std::optional<DiamondAddress> witness;

  bool passed() const noexcept { return ball_equals_union && overlap_is_vertex; }
};

// Throws NoGeneration for Top and Bottom.
NeighborhoodReport check_neighborhood_structure(const DiamondGraph& g, const DiamondAddress& v);

// Components of the graph with Z_d removed. Diameters are measured in the
// induced subgraph and, for comparison, in the whole graph.
struct ComponentReport {
  unsigned d = 0;
  std::size_t removed = 0;
  std::size_t components = 0;
  std::uint64_t bound = 0;  // 2^d
  std::uint64_t max_induced_diameter = 0;
  std::uint64_t max_ambient_diameter = 0;
  // A pair realising max_induced_diameter.
  std::optional<std::pair<DiamondAddress, DiamondAddress>> witness;
  // Components whose induced diameter is larger than their ambient one.
  std::size_t metric_discrepancies = 0;

  bool passed() const noexcept { return max_induced_diameter < bound; }
};

// Requires 1 <= d <= m; throws OutOfRange otherwise.
ComponentReport check_component_diameters(const DiamondGraph& g, unsigned d);

}  // namespace treediam
