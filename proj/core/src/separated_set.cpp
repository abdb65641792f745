#include "treediam/separated_set.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "treediam/error.hpp"
#include "treediam/metric.hpp"

namespace treediam {

namespace {

using Mask = std::uint64_t;

class MaxClique {
 public:
  explicit MaxClique(std::vector<Mask> adj) : adj_(std::move(adj)) {}

  Mask solve() {
    const std::size_t n = adj_.size();
    const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    expand(0, all);
    return best_;
  }

 private:
  // Greedy colouring of `p`; order[i] is coloured bound[i], ascending.
  void colour(Mask p, std::vector<unsigned>& order, std::vector<unsigned>& bound) const {
    unsigned c = 0;
    while (p != 0) {
      ++c;
      Mask q = p;
      while (q != 0) {
        const auto v = static_cast<unsigned>(std::countr_zero(q));
        q &= ~(Mask{1} << v);
        q &= ~adj_[v];
        p &= ~(Mask{1} << v);
        order.push_back(v);
        bound.push_back(c);
      }
    }
  }

  void expand(Mask r, Mask p) {
    std::vector<unsigned> order;
    std::vector<unsigned> bound;
    colour(p, order, bound);
    const auto size_r = static_cast<unsigned>(std::popcount(r));
    for (std::size_t i = order.size(); i-- > 0;) {
      if (size_r + bound[i] <= best_size_) return;
      const unsigned v = order[i];
      const Mask r2 = r | (Mask{1} << v);
      const Mask p2 = p & adj_[v];
      if (p2 == 0) {
        if (size_r + 1 > best_size_) {
          best_size_ = size_r + 1;
          best_ = r2;
        }
      } else {
        expand(r2, p2);
      }
      p &= ~(Mask{1} << v);
    }
  }

  std::vector<Mask> adj_;
  Mask best_ = 0;
  unsigned best_size_ = 0;
};

}  // namespace

bool is_separated(const std::vector<DiamondAddress>& set, std::uint64_t separation, const DiamondParams& params) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (diamond_distance(set[i], set[j], params) < separation) return false;
    }
  }
  return true;
}

SeparatedSetResult max_separated_set(const DiamondGraph& g, const SubdiamondRef& region, std::uint64_t separation,
                                     SeparationMode mode, std::size_t exact_limit) {
  const DiamondParams& params = g.params();
  validate_subdiamond(region, params);
  if (separation == 0) throw Error(ErrorKind::Precondition, "separation must be at least 1");
  const std::vector<VertexIndex> verts = subdiamond_vertices(g, region);
  if (verts.empty()) throw Error(ErrorKind::EmptyRegion, "region " + to_string(region) + " has no vertices");

  const std::size_t limit = std::min<std::size_t>(exact_limit, 64);
  const bool fits = verts.size() <= limit;
  if (mode == SeparationMode::Exact && !fits) {
    throw Error(ErrorKind::BudgetExceeded, "region " + to_string(region) + " has " + std::to_string(verts.size()) +
                                               " vertices, exact limit is " + std::to_string(limit));
  }

  SeparatedSetResult result;
  result.separation = separation;
  result.region = region;
  result.region_vertices = verts.size();
  const std::size_t n = verts.size();
  auto far = [&](std::size_t i, std::size_t j) {
    return diamond_distance(g.label(verts[i]), g.label(verts[j]), params) >= separation;
  };

  if (mode == SeparationMode::Greedy || !fits) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::all_of(chosen.begin(), chosen.end(), [&](std::size_t j) { return far(i, j); })) chosen.push_back(i);
    }
    for (std::size_t i : chosen) result.set.push_back(g.label(verts[i]));
    result.exact = false;
    return result;
  }

  std::vector<Mask> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (far(i, j)) {
        adj[i] |= Mask{1} << j;
        adj[j] |= Mask{1} << i;
      }
    }
  }
  Mask best = MaxClique(std::move(adj)).solve();
  while (best != 0) {
    const auto i = static_cast<std::size_t>(std::countr_zero(best));
    best &= best - 1;
    result.set.push_back(g.label(verts[i]));
  }
  std::sort(result.set.begin(), result.set.end());
  result.exact = true;
  return result;
}

std::uint64_t lemma_bound(unsigned q, unsigned p, Branching k) {
  if (!k.is_finite() || k.value() < 2) throw Error(ErrorKind::Precondition, "branching must be finite and at least 2");
  if (q < p) {
    throw Error(ErrorKind::OutOfRange, "q = " + std::to_string(q) + " is below p = " + std::to_string(p));
  }
  std::uint64_t bound = k.value();
  for (unsigned i = 0; i < q - p; ++i) {
    if (__builtin_mul_overflow(bound, 2 * k.value(), &bound)) {
      throw Error(ErrorKind::OutOfRange, "bound does not fit in 64 bits");
    }
  }
  return bound;
}

std::uint64_t count_subdiamonds(const DiamondParams& params, const SubdiamondRef& region, unsigned p) {
  validate_subdiamond(region, params);
  if (p > region.level(params)) {
    throw Error(ErrorKind::OutOfRange, "level " + std::to_string(p) + " exceeds the region level");
  }
  return subdiamonds_at_level(p, params, region).size();
}

SubdiamondCap max_points_per_subdiamond(const std::vector<DiamondAddress>& set, const DiamondParams& params,
                                        const SubdiamondRef& region, unsigned p) {
  validate_subdiamond(region, params);
  if (p > region.level(params)) {
    throw Error(ErrorKind::OutOfRange, "level " + std::to_string(p) + " exceeds the region level");
  }
  SubdiamondCap cap;
  bool first = true;
  for (const SubdiamondRef& s : subdiamonds_at_level(p, params, region)) {
    const auto count =
        static_cast<std::size_t>(std::count_if(set.begin(), set.end(), [&](const auto& v) { return s.contains(v); }));
    if (first || count > cap.max_count) {
      cap.worst = s;
      cap.max_count = count;
      first = false;
    }
  }
  return cap;
}

}  // namespace treediam
