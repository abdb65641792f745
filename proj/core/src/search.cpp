#include <algorithm>
#include <numeric>
#include <random>
#include <thread>

#include "treediam/embedding.hpp"
#include "treediam/error.hpp"
#include "treediam/graph.hpp"
#include "treediam/metric.hpp"

namespace treediam {

namespace {

__extension__ typedef unsigned __int128 wide;

// Unreduced non-negative ratio num/den.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

bool less(Ratio a, Ratio b) { return static_cast<wide>(a.num) * b.den < static_cast<wide>(b.num) * a.den; }
Ratio max(Ratio a, Ratio b) { return less(a, b) ? b : a; }

// expansion * contraction, unreduced. Each factor is below 2^62.
struct Product {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

Product product(Ratio a, Ratio b) { return {a.num * b.num, a.den * b.den}; }

int compare(const Product& a, const Product& b) {
  const wide lhs = static_cast<wide>(a.num) * b.den;
  const wide rhs = static_cast<wide>(b.num) * a.den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

Product from_rational(const Rational& r) {
  if (r <= 0 || r.numerator() >= (std::int64_t{1} << 62) || r.denominator() >= (std::int64_t{1} << 62)) {
    throw Error(ErrorKind::Precondition, "prune bound must be a positive rational with terms below 2^62");
  }
  return {static_cast<std::uint64_t>(r.numerator()), static_cast<std::uint64_t>(r.denominator())};
}

struct Target {
  DiamondGraph graph;
  DistanceMatrix dist;
};

Target prepare_target(const FiniteMetric& source, const DiamondParams& params, const SearchConfig& cfg) {
  params.validate();
  if (source.size() < 2) throw Error(ErrorKind::TrivialSource, "search needs at least two source points");
  if (params.branching.is_unbounded()) {
    throw Error(ErrorKind::UnboundedNotMaterializable, "search targets must have finite branching");
  }
  const auto count = params.vertex_count();
  const auto cap = std::min(cfg.max_target_vertices, cfg.vertex_budget);
  if (!count || *count > cap) {
    throw Error(ErrorKind::TargetTooLarge,
                "target D_{" + std::to_string(params.level) + "," + std::to_string(params.branching.value()) +
                    "} has " + (count ? std::to_string(*count) : std::string("too many")) +
                    " vertices; search targets are limited to " + std::to_string(cap));
  }
  if (*count < source.size()) {
    throw Error(ErrorKind::Precondition, "target has fewer vertices than the source; no injective map exists");
  }
  auto graph = materialize_diamond(params, cfg.vertex_budget);
  auto dist = all_pairs_bfs(graph);
  return {std::move(graph), std::move(dist)};
}

struct Score {
  Product value;
  std::size_t ties = 0;  // pairs attaining either maximum
};

bool better(const Score& a, const Score& b) {
  const int c = compare(a.value, b.value);
  return c < 0 || (c == 0 && a.ties < b.ties);
}

Score score(const FiniteMetric& src, const DistanceMatrix& dt, const std::vector<VertexIndex>& assign) {
  Ratio e, c;
  std::size_t e_count = 0, c_count = 0;
  for (std::size_t i = 0; i < assign.size(); ++i) {
    for (std::size_t j = i + 1; j < assign.size(); ++j) {
      const Ratio ex{dt(assign[i], assign[j]), src.distance(i, j)};
      const Ratio co{ex.den, ex.num};
      if (less(e, ex)) {
        e = ex;
        e_count = 1;
      } else if (!less(ex, e)) {
        ++e_count;
      }
      if (less(c, co)) {
        c = co;
        c_count = 1;
      } else if (!less(co, c)) {
        ++c_count;
      }
    }
  }
  return {product(e, c), e_count + c_count};
}

SearchResult finish(const FiniteMetric& source, const DiamondParams& params, const Target& target,
                    const std::vector<VertexIndex>& assign, bool exhausted, std::uint64_t nodes) {
  EmbeddingMap map{source, params, {}};
  map.assignment.reserve(assign.size());
  for (auto v : assign) map.assignment.push_back(target.graph.label(v));
  auto report = evaluate_distortion(map);
  return {std::move(map), report, exhausted, nodes};
}

// Depth-first branch and bound below a fixed image for point 0.
class PartitionSearch {
 public:
  struct Outcome {
    bool found = false;
    Product value;
    std::vector<VertexIndex> assignment;
    std::uint64_t nodes = 0;
    bool complete = true;
  };

  PartitionSearch(const FiniteMetric& src, const DistanceMatrix& dt, std::optional<Product> bound, bool bound_has_map)
      : src_(src), dt_(dt), n_(src.size()), bound_(bound), bound_has_map_(bound_has_map) {}

  Outcome run(VertexIndex first, std::uint64_t cap) {
    Outcome out;
    cap_ = cap;
    nodes_ = 0;
    aborted_ = false;
    out_ = &out;
    used_.assign(dt_.size(), false);
    assign_.assign(n_, 0);
    if (cap_ == 0) {
      out.complete = false;
      return out;
    }
    ++nodes_;
    used_[first] = true;
    assign_[0] = first;
    dfs(1, Ratio{}, Ratio{});
    out.nodes = nodes_;
    out.complete = !aborted_;
    return out;
  }

 private:
  bool prunable(const Product& lb) const {
    if (!bound_) return false;
    const int c = compare(lb, *bound_);
    return c > 0 || (c == 0 && bound_has_map_);
  }

  void dfs(std::size_t depth, Ratio e, Ratio c) {
    if (depth == n_) {
      const Product value = product(e, c);
      if (!bound_ || compare(value, *bound_) < 0 || (!bound_has_map_ && compare(value, *bound_) == 0)) {
        bound_ = value;
        bound_has_map_ = true;
        out_->found = true;
        out_->value = value;
        out_->assignment = assign_;
      }
      return;
    }
    for (VertexIndex t = 0; t < dt_.size(); ++t) {
      if (used_[t]) continue;
      Ratio e2 = e, c2 = c;
      bool cut = false;
      const std::uint32_t* row = dt_.row(t);
      for (std::size_t j = 0; j < depth; ++j) {
        const std::uint64_t ds = src_.distance(depth, j);
        const std::uint64_t d = row[assign_[j]];
        e2 = max(e2, Ratio{d, ds});
        c2 = max(c2, Ratio{ds, d});
        if (prunable(product(e2, c2))) {
          cut = true;
          break;
        }
      }
      if (cut) continue;
      if (nodes_ >= cap_) {
        aborted_ = true;
        return;
      }
      ++nodes_;
      used_[t] = true;
      assign_[depth] = t;
      dfs(depth + 1, e2, c2);
      used_[t] = false;
      if (aborted_) return;
    }
  }

  const FiniteMetric& src_;
  const DistanceMatrix& dt_;
  std::size_t n_;
  std::optional<Product> bound_;
  bool bound_has_map_;
  std::vector<bool> used_;
  std::vector<VertexIndex> assign_;
  std::uint64_t cap_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  Outcome* out_ = nullptr;
};

std::vector<VertexIndex> star_placement(const FiniteMetric& source, const Target& target) {
  if (!source.tree()) return {};
  BottomNeighbors neighbours(target.graph.params());
  if (neighbours.size() + 1 < source.size()) return {};
  std::vector<VertexIndex> assign{target.graph.index_of(DiamondAddress::bottom())};
  for (auto it = neighbours.begin(); assign.size() < source.size(); ++it) {
    assign.push_back(target.graph.index_of(*it));
  }
  return assign;
}

// First-improvement hill climbing over relocations and swaps.
std::uint64_t climb(const FiniteMetric& src, const DistanceMatrix& dt, std::vector<VertexIndex>& assign,
                    std::mt19937_64& rng, unsigned max_sweeps) {
  const std::size_t n = assign.size();
  const std::size_t v_count = dt.size();
  std::vector<bool> used(v_count, false);
  for (auto v : assign) used[v] = true;
  Score current = score(src, dt, assign);
  std::uint64_t evaluated = 0;

  std::vector<std::size_t> points(n);
  std::iota(points.begin(), points.end(), std::size_t{0});
  std::vector<VertexIndex> vertices(v_count);
  std::iota(vertices.begin(), vertices.end(), VertexIndex{0});

  for (unsigned sweep = 0; sweep < max_sweeps; ++sweep) {
    bool improved = false;
    std::shuffle(points.begin(), points.end(), rng);
    std::shuffle(vertices.begin(), vertices.end(), rng);
    for (std::size_t i : points) {
      for (VertexIndex t : vertices) {
        if (used[t]) continue;
        const VertexIndex old = assign[i];
        assign[i] = t;
        ++evaluated;
        Score s = score(src, dt, assign);
        if (better(s, current)) {
          used[old] = false;
          used[t] = true;
          current = s;
          improved = true;
        } else {
          assign[i] = old;
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        std::swap(assign[points[a]], assign[points[b]]);
        ++evaluated;
        Score s = score(src, dt, assign);
        if (better(s, current)) {
          current = s;
          improved = true;
        } else {
          std::swap(assign[points[a]], assign[points[b]]);
        }
      }
    }
    if (!improved) break;
  }
  return evaluated;
}

SearchResult local_search_on(const FiniteMetric& source, const DiamondParams& params, const Target& target,
                             const SearchConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const std::size_t n = source.size();
  std::optional<std::pair<Score, std::vector<VertexIndex>>> best;
  std::uint64_t evaluated = 0;
  const unsigned restarts = std::max(1u, cfg.restarts);
  std::vector<VertexIndex> pool(target.dist.size());
  std::iota(pool.begin(), pool.end(), VertexIndex{0});

  for (unsigned r = 0; r < restarts; ++r) {
    std::vector<VertexIndex> assign;
    if (r == 0) assign = star_placement(source, target);
    if (assign.empty()) {
      std::shuffle(pool.begin(), pool.end(), rng);
      assign.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
    }
    evaluated += climb(source, target.dist, assign, rng, cfg.max_sweeps);
    Score s = score(source, target.dist, assign);
    if (!best || compare(s.value, best->first.value) < 0) best.emplace(s, assign);
  }
  return finish(source, params, target, best->second, false, evaluated);
}

}  // namespace

SearchResult local_search(const FiniteMetric& source, const DiamondParams& target, const SearchConfig& cfg) {
  const Target t = prepare_target(source, target, cfg);
  return local_search_on(source, target, t, cfg);
}

SearchResult local_search(TreeSpec source, const DiamondParams& target, const SearchConfig& cfg) {
  return local_search(FiniteMetric::from_tree(source), target, cfg);
}

SearchResult exhaustive_search(const FiniteMetric& source, const DiamondParams& target, const SearchConfig& cfg) {
  const Target t = prepare_target(source, target, cfg);
  const std::size_t partitions = t.dist.size();

  std::optional<Product> bound;
  bool bound_has_map = false;
  std::vector<VertexIndex> incumbent;
  if (cfg.prune_bound) bound = from_rational(*cfg.prune_bound);
  if (cfg.warm_start) {
    SearchConfig warm = cfg;
    warm.restarts = std::min(cfg.restarts, 4u);
    auto seeded = local_search_on(source, target, t, warm);
    const Product value = from_rational(seeded.report.distortion);
    if (!bound || compare(value, *bound) <= 0) {
      bound = value;
      bound_has_map = true;
      for (const auto& a : seeded.map.assignment) incumbent.push_back(t.graph.index_of(a));
    }
  }

  // Partitions share the initial incumbent and run in waves of `workers`,
  // each capped by the budget left before the wave. Merging is in partition
  // order; a run that exceeded its sequential share is replayed with exactly
  // that share.
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(partitions)));
  std::uint64_t remaining = cfg.node_budget;
  std::uint64_t nodes = 0;
  bool exhausted = true;
  bool have_best = bound_has_map;
  Product best = have_best ? *bound : Product{};
  for (std::size_t wave = 0; wave < partitions && exhausted; wave += workers) {
    const std::size_t wave_end = std::min<std::size_t>(partitions, wave + workers);
    std::vector<PartitionSearch::Outcome> outcomes(wave_end - wave);
    auto run = [&, cap = remaining](std::size_t p) {
      outcomes[p - wave] = PartitionSearch(source, t.dist, bound, bound_has_map).run(static_cast<VertexIndex>(p), cap);
    };
    if (outcomes.size() == 1) {
      run(wave);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t p = wave; p < wave_end; ++p) pool.emplace_back(run, p);
    }
    for (std::size_t p = wave; p < wave_end; ++p) {
      auto outcome = std::move(outcomes[p - wave]);
      if (!outcome.complete || outcome.nodes > remaining) {
        outcome = PartitionSearch(source, t.dist, bound, bound_has_map).run(static_cast<VertexIndex>(p), remaining);
        exhausted = false;
      }
      nodes += outcome.nodes;
      remaining -= outcome.nodes;
      if (outcome.found && (!have_best || compare(outcome.value, best) < 0)) {
        have_best = true;
        best = outcome.value;
        incumbent = outcome.assignment;
      }
      if (!exhausted) break;
    }
  }

  if (incumbent.empty()) {
    if (exhausted) {
      throw Error(ErrorKind::Precondition, "no injective map beats the supplied prune bound");
    }
    throw Error(ErrorKind::NoIncumbent, "node budget exhausted before any complete map was found");
  }
  return finish(source, target, t, incumbent, exhausted, nodes);
}

SearchResult exhaustive_search(TreeSpec source, const DiamondParams& target, const SearchConfig& cfg) {
  return exhaustive_search(FiniteMetric::from_tree(source), target, cfg);
}

}  // namespace treediam
