#include "treediam/metric.hpp"

#include <algorithm>
#include <bit>
#include <span>
#include <string>

#include "treediam/error.hpp"

namespace treediam {

namespace {

constexpr Distance pow2(unsigned e) noexcept { return Distance{1} << e; }

// Profile of the middle vertex of subdiamond `path`, lifted to the enclosing
// subdiamond path[0..outer).
BoundaryProfile lift_middle(std::span<const Refinement> path, unsigned m, std::size_t outer) {
  const unsigned own_level = m - static_cast<unsigned>(path.size());
  BoundaryProfile p{pow2(own_level - 1), pow2(own_level - 1), own_level};
  for (std::size_t t = path.size(); t-- > outer;) {
    // Leaving child path[0..t+1) of level m-t-1 for its parent path[0..t).
    const Distance half = pow2(m - static_cast<unsigned>(t) - 1);
    if (path[t].half == Half::Lower) {
      p.to_top += half;
    } else {
      p.to_bottom += half;
    }
    p.level = m - static_cast<unsigned>(t);
  }
  return p;
}

std::size_t common_prefix(const RefinementPath& a, const RefinementPath& b) noexcept {
  const auto n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

}  // namespace

Distance tree_distance(const TreeVertex& u, const TreeVertex& v) noexcept {
  const unsigned shorter = std::min(u.length(), v.length());
  const std::uint64_t a = shorter ? u.packed() >> (u.length() - shorter) : 0;
  const std::uint64_t b = shorter ? v.packed() >> (v.length() - shorter) : 0;
  const unsigned lcp = shorter - static_cast<unsigned>(std::bit_width(a ^ b));
  return Distance{u.length()} + v.length() - 2 * Distance{lcp};
}

BoundaryProfile boundary_profile(const DiamondAddress& v, const SubdiamondRef& s, const DiamondParams& params) {
  params.validate();
  validate_address(v, params);
  validate_subdiamond(s, params);
  const unsigned level = s.level(params);
  if (v == s.bottom()) return {0, pow2(level), level};
  if (v == s.top()) return {pow2(level), 0, level};
  if (!s.contains(v)) {
    throw Error(ErrorKind::VertexNotInSubdiamond,
                "vertex " + to_string(v) + " is not in subdiamond " + to_string(s));
  }
  return lift_middle(v.refinements(), params.level, s.path.size());
}

Distance diamond_distance(const DiamondAddress& u, const DiamondAddress& v, const DiamondParams& params) {
  params.validate();
  validate_address(u, params);
  validate_address(v, params);
  const unsigned m = params.level;

  if (u == v) return 0;
  if (!u.is_inner() && !v.is_inner()) return pow2(m);
  if (!u.is_inner() || !v.is_inner()) {
    const DiamondAddress& end = u.is_inner() ? v : u;
    const DiamondAddress& in = u.is_inner() ? u : v;
    const auto p = lift_middle(in.refinements(), m, 0);
    return end.is_bottom() ? p.to_bottom : p.to_top;
  }

  const auto& pu = u.refinements();
  const auto& pv = v.refinements();
  const std::size_t lcp = common_prefix(pu, pv);
  const Distance diameter = pow2(m - static_cast<unsigned>(lcp));

  // Chains of the minimal common subdiamond S = path[0..lcp) only meet at
  // S's bottom and top, so distinct chains route through one of those.
  auto chain_of = [&](const DiamondAddress& a) {
    return a.refinements().size() == lcp ? a.middle_branch() : a.refinements()[lcp].branch;
  };
  if (chain_of(u) != chain_of(v)) {
    const auto a = lift_middle(pu, m, lcp);
    const auto b = lift_middle(pv, m, lcp);
    return std::min(a.to_bottom + b.to_bottom, a.to_top + b.to_top);
  }

  // Same chain. Either one vertex is S's middle on that chain (an endpoint
  // of the child holding the other), or the two sit in opposite halves.
  if (pu.size() == lcp || pv.size() == lcp) {
    const DiamondAddress& inside = pu.size() == lcp ? v : u;
    const auto child = lift_middle(inside.refinements(), m, lcp + 1);
    return inside.refinements()[lcp].half == Half::Lower ? child.to_top : child.to_bottom;
  }
  const bool u_lower = pu[lcp].half == Half::Lower;
  const auto lo = lift_middle(u_lower ? pu : pv, m, lcp);
  const auto hi = lift_middle(u_lower ? pv : pu, m, lcp);
  const Distance via_middle = hi.to_bottom - lo.to_bottom;
  const Distance around = lo.to_bottom + diameter + hi.to_top;
  return std::min(via_middle, around);
}

DistanceMatrix all_pairs_oracle(const DiamondGraph& g) {
  DistanceMatrix out(g.vertex_count());
  for (VertexIndex i = 0; i < g.vertex_count(); ++i) {
    for (VertexIndex j = i + 1; j < g.vertex_count(); ++j) {
      const auto d = static_cast<std::uint32_t>(diamond_distance(g.label(i), g.label(j), g.params()));
      out.at(i, j) = d;
      out.at(j, i) = d;
    }
  }
  return out;
}

}  // namespace treediam
