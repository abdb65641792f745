#include "doctest.h"

#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "treediam/error.hpp"
#include "treediam/graph.hpp"
#include "treediam/metric.hpp"
#include "treediam/observations.hpp"
#include "treediam/separated_set.hpp"
#include "treediam/witness.hpp"

using namespace treediam;

namespace {

DiamondParams D(unsigned m, std::uint64_t k) { return {m, Branching(k)}; }

// Largest separated subset of `verts` by trying every subset, with BFS
// distances.
std::size_t brute_force_separated(const DiamondGraph& g, const std::vector<VertexIndex>& verts, std::uint64_t sep) {
  const auto bfs = all_pairs_bfs(g);
  const std::size_t n = verts.size();
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        if ((mask >> j & 1) && bfs(verts[i], verts[j]) < sep) ok = false;
      }
    }
    if (ok) best = size;
  }
  return best;
}

bool separated_by_bfs(const DiamondGraph& g, const std::vector<DiamondAddress>& set, std::uint64_t sep) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (bfs_distance(g, set[i], set[j]) < sep) return false;
  return true;
}

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("separated set: D_{1,k} at separation 2 holds exactly k points") {
  for (std::uint64_t k = 2; k <= 4; ++k) {
    CAPTURE(k);
    const auto g = materialize_diamond(D(1, k));
    const auto res = max_separated_set(g, SubdiamondRef::whole(), 2);
    CHECK(res.exact);
    CHECK(res.size() == k);
    std::vector<VertexIndex> all(g.vertex_count());
    std::iota(all.begin(), all.end(), VertexIndex{0});
    CHECK(brute_force_separated(g, all, 2) == k);
    for (const auto& v : res.set) CHECK(v.is_inner());
  }
}

TEST_CASE("separated set: exact mode matches subset enumeration") {
  struct Case {
    DiamondParams params;
    SubdiamondRef region;
  };
  const std::vector<Case> cases = {
      {D(2, 2), SubdiamondRef::whole()},
      {D(2, 3), SubdiamondRef::whole().child(1, Half::Upper)},
      {D(3, 2), SubdiamondRef::whole().child(2, Half::Lower)},
      {D(3, 3), SubdiamondRef::whole().child(2, Half::Upper).child(1, Half::Lower)},
  };
  for (const auto& c : cases) {
    const auto g = materialize_diamond(c.params);
    const auto verts = subdiamond_vertices(g, c.region);
    REQUIRE(verts.size() <= 20);
    for (std::uint64_t sep = 1; sep <= 8; ++sep) {
      CAPTURE(to_string(c.region));
      CAPTURE(sep);
      const auto res = max_separated_set(g, c.region, sep);
      CHECK(res.size() == brute_force_separated(g, verts, sep));
      CHECK(separated_by_bfs(g, res.set, sep));
    }
  }
}

TEST_CASE("separated set: separation 1 takes the whole region") {
  const auto g = materialize_diamond(D(3, 2));
  for (const auto& s : subdiamonds_at_level(2, g.params())) {
    const auto res = max_separated_set(g, s, 1);
    CHECK(res.size() == subdiamond_vertices(g, s).size());
    CHECK(res.size() == res.region_vertices);
  }
}

TEST_CASE("separated set: D_{2,2} at separation 2 stays within k (2k)^(q-p)") {
  const auto g = materialize_diamond(D(2, 2));
  const auto res = max_separated_set(g, SubdiamondRef::whole(), 2);
  CHECK(lemma_bound(2, 1, Branching(2)) == 8);
  CHECK(res.size() <= 8);
  CHECK(res.size() == 8);
}

TEST_CASE("separated set: greedy and auto modes") {
  const auto g = materialize_diamond(D(4, 2));
  CHECK_THROWS_AS(max_separated_set(g, SubdiamondRef::whole(), 2), Error);
  try {
    (void)max_separated_set(g, SubdiamondRef::whole(), 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
  const auto autom = max_separated_set(g, SubdiamondRef::whole(), 4, SeparationMode::Auto);
  CHECK_FALSE(autom.exact);
  CHECK(is_separated(autom.set, 4, g.params()));
  CHECK(autom.size() <= lemma_bound(4, 2, Branching(2)));

  const auto small = max_separated_set(g, SubdiamondRef::whole().child(1, Half::Lower), 2, SeparationMode::Auto);
  CHECK(small.exact);
  for (std::uint64_t sep : {1, 2, 4, 8}) {
    const SubdiamondRef region = SubdiamondRef::whole().child(2, Half::Upper);
    const auto greedy = max_separated_set(g, region, sep, SeparationMode::Greedy);
    const auto exact = max_separated_set(g, region, sep, SeparationMode::Exact);
    CHECK_FALSE(greedy.exact);
    CHECK(separated_by_bfs(g, greedy.set, sep));
    CHECK(greedy.size() <= exact.size());
  }
}

TEST_CASE("separated set: errors") {
  const auto g = materialize_diamond(D(2, 2));
  CHECK_THROWS_AS(max_separated_set(g, SubdiamondRef::whole(), 0), Error);
  SubdiamondRef bad;
  bad.path = {{5, Half::Lower}};
  CHECK_THROWS_AS(max_separated_set(g, bad, 2), Error);
}

TEST_CASE("lemma_bound values and errors") {
  for (std::uint64_t k = 2; k <= 5; ++k) {
    for (unsigned p = 0; p <= 4; ++p) {
      CHECK(lemma_bound(p, p, Branching(k)) == k);
      CHECK(lemma_bound(p + 2, p, Branching(k)) == k * 4 * k * k);
    }
  }
  CHECK(lemma_bound(3, 2, Branching(2)) == 8);
  try {
    (void)lemma_bound(1, 2, Branching(2));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfRange);
  }
  CHECK_THROWS_AS(lemma_bound(2, 1, Branching::unbounded()), Error);
  CHECK_THROWS_AS(lemma_bound(200, 0, Branching(2)), Error);
}

TEST_CASE("level-p subdiamonds of a level-q region number (2k)^(q-p)") {
  for (std::uint64_t k = 2; k <= 3; ++k) {
    const auto params = D(k == 2 ? 4 : 3, k);
    for (unsigned q = 0; q <= params.level; ++q) {
      for (const auto& region : subdiamonds_at_level(q, params)) {
        for (unsigned p = 0; p <= q; ++p) {
          const auto edges = *DiamondParams{q - p, Branching(k)}.edge_count();
          CHECK(count_subdiamonds(params, region, p) == edges);
          CHECK(edges == upow(2 * k, q - p));
        }
      }
    }
  }
}

TEST_CASE("lemma conformance and the per-subdiamond cap") {
  struct Grid {
    std::uint64_t k;
    unsigned m;
  };
  for (const Grid grid : {Grid{2, 1}, Grid{2, 2}, Grid{2, 3}, Grid{3, 1}, Grid{3, 2}}) {
    const auto g = materialize_diamond(D(grid.m, grid.k));
    for (unsigned q = 0; q <= grid.m; ++q) {
      for (const auto& region : subdiamonds_at_level(q, g.params())) {
        for (unsigned p = q >= 2 ? q - 2 : 0; p <= q; ++p) {
          CAPTURE(grid.k);
          CAPTURE(grid.m);
          CAPTURE(to_string(region));
          CAPTURE(p);
          const std::uint64_t sep = std::uint64_t{1} << p;
          const auto res = max_separated_set(g, region, sep);
          REQUIRE(res.exact);
          CHECK(res.size() <= lemma_bound(q, p, Branching(grid.k)));
          CHECK(separated_by_bfs(g, res.set, sep));
          CHECK(max_points_per_subdiamond(res.set, g.params(), region, p).max_count <= grid.k);
        }
      }
    }
  }
}

TEST_CASE("neighbourhood structure: generation-1 vertices of D_{2,2}") {
  const auto g = materialize_diamond(D(2, 2));
  for (const auto& v : generation_members(1, g.params())) {
    const auto rep = check_neighborhood_structure(g, v);
    CHECK(rep.generation == 1);
    CHECK(rep.radius == 1);
    CHECK(rep.ball_size == 3);
    CHECK(rep.lower_size == 2);
    CHECK(rep.upper_size == 2);
    CHECK(rep.passed());
  }
}

TEST_CASE("neighbourhood structure holds for every vertex with a generation") {
  struct Grid {
    std::uint64_t k;
    unsigned m;
  };
  for (const Grid grid : {Grid{2, 1}, Grid{2, 2}, Grid{2, 3}, Grid{2, 4}, Grid{3, 1}, Grid{3, 2}, Grid{3, 3}}) {
    const auto g = materialize_diamond(D(grid.m, grid.k));
    for (const auto& v : g.labels()) {
      if (!v.is_inner()) continue;
      const auto rep = check_neighborhood_structure(g, v);
      CAPTURE(to_string(v));
      CHECK(rep.passed());
      const auto half = *DiamondParams{rep.generation - 1, Branching(grid.k)}.vertex_count();
      CHECK(rep.lower_size == half);
      CHECK(rep.upper_size == half);
      CHECK(rep.ball_size == 2 * half - 1);
    }
  }
}

TEST_CASE("neighbourhood structure rejects the endpoints") {
  const auto g = materialize_diamond(D(2, 2));
  for (const auto& v : {DiamondAddress::bottom(), DiamondAddress::top()}) {
    try {
      (void)check_neighborhood_structure(g, v);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoGeneration);
    }
  }
}

TEST_CASE("component diameters: D_{1,2} with both middles removed") {
  const auto g = materialize_diamond(D(1, 2));
  const auto rep = check_component_diameters(g, 1);
  CHECK(rep.removed == 2);
  CHECK(rep.components == 2);
  CHECK(rep.max_induced_diameter == 0);
  CHECK(rep.passed());
}

TEST_CASE("component diameters stay below 2^d") {
  struct Grid {
    std::uint64_t k;
    unsigned m;
  };
  for (const Grid grid : {Grid{2, 1}, Grid{2, 2}, Grid{2, 3}, Grid{2, 4}, Grid{3, 1}, Grid{3, 2}, Grid{3, 3}}) {
    const auto g = materialize_diamond(D(grid.m, grid.k));
    for (unsigned d = 1; d <= grid.m; ++d) {
      CAPTURE(grid.k);
      CAPTURE(grid.m);
      CAPTURE(d);
      const auto rep = check_component_diameters(g, d);
      CHECK(rep.passed());
      CHECK(rep.max_induced_diameter < (std::uint64_t{1} << d));
      CHECK(rep.max_ambient_diameter <= rep.max_induced_diameter);
      CHECK(rep.removed == generation_members(d, g.params()).size());
      REQUIRE(rep.witness.has_value());
      std::vector<bool> kept(g.vertex_count(), true);
      for (const auto& z : generation_members(d, g.params())) kept[g.index_of(z)] = false;
      const auto far = bfs_distances(g, g.index_of(rep.witness->first), kept);
      CHECK(far[g.index_of(rep.witness->second)] == rep.max_induced_diameter);
    }
  }
}

TEST_CASE("component diameters: out-of-range generation") {
  const auto g = materialize_diamond(D(2, 2));
  CHECK_THROWS_AS(check_component_diameters(g, 0), Error);
  CHECK_THROWS_AS(check_component_diameters(g, 3), Error);
}

TEST_CASE("witness_r against a direct search") {
  for (std::uint64_t k = 2; k <= 6; ++k) {
    for (unsigned t = 1; t <= 30; ++t) {
      const std::uint64_t n = std::uint64_t{1} << t;
      // smallest c with (2k)^t <= 2^c, by repeated doubling in long double logs
      const long double exact = static_cast<long double>(t) * std::log2(static_cast<long double>(2 * k));
      bool is_exact = false;
      const auto r = witness_r(n, k, &is_exact);
      CHECK(is_exact);
      CHECK(static_cast<long double>(r) >= exact - 1e-9L);
      CHECK(static_cast<long double>(r) < exact + 1.0L - 1e-9L);
    }
  }
  bool is_exact = true;
  CHECK(witness_r(10, 3, &is_exact) == 9);
  CHECK_FALSE(is_exact);
  CHECK(witness_r(10, 2) == 7);
  CHECK(witness_r(3, 2) == 4);
}

TEST_CASE("witness_params: feasible at n = 4096") {
  const auto w = witness_params(4096, 2, 0, schedule_alpha(AlphaSchedule::NOverLog2Squared, 4096));
  REQUIRE(w.has_value());
  CHECK(w->alpha == Rational(4096, 144));
  CHECK(w->r == 24);
  CHECK(w->d == 11);
  CHECK(w->feasible());
  CHECK(w->consistent());
}

TEST_CASE("witness_params: separation fails at n = 16 with alpha = n/3") {
  const auto w = witness_params(16, 2, 0, schedule_alpha(AlphaSchedule::NOverThree, 16));
  REQUIRE(w.has_value());
  CHECK(w->r == 8);
  CHECK(w->d == 2);
  CHECK_FALSE(w->relative.separation);
  CHECK(w->relative.packing);
  CHECK(w->relative.depth);
  CHECK(w->consistent());
}

TEST_CASE("witness_params: none when n - r < 2") {
  CHECK_FALSE(witness_params(2, 2, 0, Rational(1)).has_value());
  CHECK_FALSE(witness_params(4, 2, 0, Rational(1)).has_value());
  CHECK_FALSE(witness_params(16, 8, 0, Rational(1)).has_value());
}

TEST_CASE("witness_params: the two schedules over 2^10..2^20") {
  for (unsigned t = 10; t <= 20; ++t) {
    const std::uint64_t n = std::uint64_t{1} << t;
    CAPTURE(n);
    const auto good = witness_params(n, 2, 0, schedule_alpha(AlphaSchedule::NOverLog2Squared, n));
    REQUIRE(good.has_value());
    CHECK(good->r == 2 * t);
    CHECK(good->feasible());
    CHECK(good->consistent());
    // d is the largest integer with 2^d < n - r
    CHECK((std::uint64_t{1} << good->d) < n - good->r);
    CHECK((std::uint64_t{1} << (good->d + 1)) >= n - good->r);
    const auto bad = witness_params(n, 2, 0, schedule_alpha(AlphaSchedule::NOverThree, n));
    REQUIRE(bad.has_value());
    CHECK_FALSE(bad->relative.separation);
    CHECK_FALSE(bad->feasible());
  }
}

TEST_CASE("witness_params: both forms agree on random inputs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint64_t n = 2 + rng() % 100000;
    const std::uint64_t k = 2 + rng() % 6;
    const auto p = static_cast<unsigned>(rng() % 12);
    const Rational alpha(static_cast<std::int64_t>(1 + rng() % 5000), static_cast<std::int64_t>(1 + rng() % 50));
    std::optional<WitnessParams> w;
    try {
      w = witness_params(n, k, p, alpha);
    } catch (const Error&) {
      continue;
    }
    if (!w) continue;
    CAPTURE(n);
    CAPTURE(k);
    CAPTURE(p);
    CHECK(w->consistent());
    CHECK(w->d >= p);
    CHECK(w->relative.depth);
  }
}

TEST_CASE("witness_params: feasibility in n is monotone once attained") {
  for (const Rational alpha : {Rational(8), Rational(20), Rational(100, 3)}) {
    bool attained = false;
    for (unsigned t = 2; t <= 40; ++t) {
      const auto w = witness_params(std::uint64_t{1} << t, 2, 0, alpha);
      const bool ok = w && w->feasible();
      if (attained) CHECK(ok);
      attained = attained || ok;
    }
    CHECK(attained);
  }
}

TEST_CASE("witness_params and schedules: errors") {
  CHECK_THROWS_AS(witness_params(1, 2, 0, Rational(1)), Error);
  CHECK_THROWS_AS(witness_params(100, 1, 0, Rational(1)), Error);
  CHECK_THROWS_AS(witness_params(100, 2, 0, Rational(0)), Error);
  CHECK_THROWS_AS(witness_params(100, 2, 0, Rational(-1, 2)), Error);
  CHECK_THROWS_AS(schedule_alpha(AlphaSchedule::NOverLog2Squared, 1000), Error);
  CHECK(schedule_alpha(AlphaSchedule::NOverThree, 1000) == Rational(1000, 3));
  CHECK(parse_alpha_schedule("n-over-3") == AlphaSchedule::NOverThree);
  CHECK(to_string(parse_alpha_schedule("n-over-log2sq")) == "n-over-log2sq");
  CHECK_THROWS_AS(parse_alpha_schedule("n"), Error);
}
