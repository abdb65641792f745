#pragma once

#include <cstdint>
#include <vector>

#include "treediam/diamond.hpp"
#include "treediam/graph.hpp"

namespace treediam {

inline constexpr std::size_t kDefaultExactRegionLimit = 60;

enum class SeparationMode {
  Exact,   // maximum cardinality; regions above the limit throw BudgetExceeded
  Greedy,  // a maximal set in address order
  Auto,    // Exact when the region fits, Greedy otherwise
};

struct SeparatedSetResult {
  std::uint64_t separation = 1;
  SubdiamondRef region;
  std::size_t region_vertices = 0;
  std::vector<DiamondAddress> set;
  bool exact = false;

  std::size_t size() const noexcept { return set.size(); }
};

// A largest set of vertices of `region` whose pairwise distances in the
// whole graph are all at least `separation`. Exact mode is a bitset
// branch-and-bound for maximum clique in the "far enough" graph.
SeparatedSetResult max_separated_set(const DiamondGraph& g, const SubdiamondRef& region, std::uint64_t separation,
                                     SeparationMode mode = SeparationMode::Exact,
                                     std::size_t exact_limit = kDefaultExactRegionLimit);

// True when every pair in `set` is at distance >= separation.
bool is_separated(const std::vector<DiamondAddress>& set, std::uint64_t separation, const DiamondParams& params);

// k (2k)^(q-p). Throws OutOfRange for q < p and on overflow, Precondition
// for unbounded or k < 2.
std::uint64_t lemma_bound(unsigned q, unsigned p, Branching k);

// Number of level-p subdiamonds nested in `region`, counted by enumeration.
std::uint64_t count_subdiamonds(const DiamondParams& params, const SubdiamondRef& region, unsigned p);

struct SubdiamondCap {
  SubdiamondRef worst;       // a level-p subdiamond holding the most points
  std::size_t max_count = 0;
};

// The largest intersection of `set` with a level-p subdiamond inside `region`.
SubdiamondCap max_points_per_subdiamond(const std::vector<DiamondAddress>& set, const DiamondParams& params,
                                        const SubdiamondRef& region, unsigned p);

}  // namespace treediam
