#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "treediam/error.hpp"
#include "treediam/graph.hpp"
#include "treediam/graph_io.hpp"
#include "treediam/metric.hpp"

using namespace treediam;

namespace {

DiamondParams D(unsigned m, std::uint64_t k) { return {m, Branching(k)}; }

// Vertex and edge counts obtained by literally replaying the construction on
// an anonymous edge list; independent of addresses and of the count formulas.
std::pair<std::uint64_t, std::uint64_t> replay_counts(unsigned m, std::uint64_t k) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges{{0, 1}};
  std::uint64_t next = 2;
  for (unsigned step = 0; step < m; ++step) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> refined;
    for (auto [u, v] : edges) {
      for (std::uint64_t b = 0; b < k; ++b) {
        const auto mid = next++;
        refined.emplace_back(u, mid);
        refined.emplace_back(mid, v);
      }
    }
    edges = std::move(refined);
  }
  return {next, edges.size()};
}

}  // namespace

TEST_CASE("enumerate_tree counts and order") {
  CHECK(enumerate_tree({0}) == std::vector<TreeVertex>{TreeVertex::root()});
  CHECK(enumerate_tree({3}).size() == 15);
  const auto t6 = enumerate_tree({6});
  CHECK(t6.size() == 127);
  CHECK(TreeSpec{6}.vertex_count() == 127);
  CHECK(std::is_sorted(t6.begin(), t6.end()));
  CHECK(std::set<TreeVertex>(t6.begin(), t6.end()).size() == t6.size());
  CHECK(to_string(t6[1]) == "0");
  CHECK(to_string(t6[2]) == "1");
  CHECK(to_string(t6[3]) == "00");
}

TEST_CASE("tree vertex text form") {
  CHECK(to_string(TreeVertex::root()) == "()");
  CHECK(parse_tree_vertex("()").is_root());
  CHECK(to_string(parse_tree_vertex("11101")) == "11101");
  CHECK_THROWS_AS(parse_tree_vertex("102"), Error);
  CHECK(parse_tree_vertex("1110").child(true) == parse_tree_vertex("11101"));
  CHECK(parse_tree_vertex("11101").parent() == parse_tree_vertex("1110"));
}

TEST_CASE("materialize_diamond examples") {
  auto d0 = materialize_diamond(D(0, 3));
  CHECK(d0.vertex_count() == 2);
  CHECK(d0.edge_count() == 1);

  auto d22 = materialize_diamond(D(2, 2));
  CHECK(d22.vertex_count() == 12);
  CHECK(d22.edge_count() == 16);

  auto d13 = materialize_diamond(D(1, 3));
  CHECK(d13.vertex_count() == 5);
  CHECK(d13.edge_count() == 6);
}

TEST_CASE("count formulas agree with replayed construction and materialization") {
  for (std::uint64_t k : {2, 3, 4, 5}) {
    for (unsigned m = 0; m <= 4; ++m) {
      const auto [v, e] = replay_counts(m, k);
      if (v > 20000) continue;
      CAPTURE(m);
      CAPTURE(k);
      CHECK(*D(m, k).vertex_count() == v);
      CHECK(*D(m, k).edge_count() == e);
      auto g = materialize_diamond(D(m, k));
      CHECK(g.vertex_count() == v);
      CHECK(g.edge_count() == e);
    }
  }
}

TEST_CASE("materialized graphs are simple, connected and address-bijective") {
  for (auto p : {D(3, 2), D(2, 3), D(4, 2), D(2, 4)}) {
    auto g = materialize_diamond(p);
    std::set<DiamondAddress> seen(g.labels().begin(), g.labels().end());
    CHECK(seen.size() == g.vertex_count());
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      CHECK(is_valid_address(g.label(v), p));
      CHECK(g.index_of(g.label(v)) == v);
      auto nbrs = g.neighbors(v);
      CHECK(std::adjacent_find(nbrs.begin(), nbrs.end()) == nbrs.end());
      CHECK(std::find(nbrs.begin(), nbrs.end(), v) == nbrs.end());
    }
    const auto dist = bfs_distances(g, 0);
    CHECK(std::none_of(dist.begin(), dist.end(), [](auto d) { return d == kUnreachable; }));
  }
}

TEST_CASE("every valid address is materialized exactly once") {
  const auto p = D(3, 2);
  auto g = materialize_diamond(p);
  std::size_t inner = 0;
  for (unsigned d = 1; d <= p.level; ++d) {
    for (const auto& a : generation_members(d, p)) {
      CHECK(g.find(a).has_value());
      ++inner;
    }
  }
  CHECK(inner + 2 == g.vertex_count());
}

TEST_CASE("budget and unbounded guards") {
  CHECK_THROWS_WITH_AS(materialize_diamond(D(5, 2), 100), doctest::Contains("budget"), Error);
  try {
    materialize_diamond({2, Branching::unbounded()});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnboundedNotMaterializable);
  }
  try {
    materialize_diamond(D(9, 2), 1000);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("generation_number") {
  const auto p = D(2, 2);
  CHECK(generation_number(DiamondAddress::inner({{1, Half::Upper}}, 2), p) == 1u);
  CHECK(generation_number(DiamondAddress::inner({}, 1), p) == 2u);
  CHECK_FALSE(generation_number(DiamondAddress::top(), p).has_value());
  CHECK_FALSE(generation_number(DiamondAddress::bottom(), D(5, 3)).has_value());
  // Forward step stays fixed while the backward number tracks m.
  const auto a = DiamondAddress::inner({{2, Half::Lower}}, 1);
  CHECK(a.creation_step() == 2);
  CHECK(generation_number(a, D(4, 2)) == 3u);

  CHECK_THROWS_AS(generation_number(DiamondAddress::inner({{1, Half::Lower}, {1, Half::Lower}}, 1), p), Error);
  CHECK_THROWS_AS(generation_number(DiamondAddress::inner({}, 3), p), Error);
  CHECK_NOTHROW(generation_number(DiamondAddress::inner({}, 3), D(2, 3)));
  CHECK(generation_number(DiamondAddress::inner({{1000, Half::Lower}}, 77), {2, Branching::unbounded()}) == 1u);
}

TEST_CASE("generation_members") {
  const auto top_gen = generation_members(2, D(2, 3));
  CHECK(top_gen.size() == 3);
  for (const auto& a : top_gen) CHECK(a.refinements().empty());
  CHECK(generation_members(1, D(2, 2)).size() == 8);

  // Z_2 of D_{3,3}: formula k(2k)^(m-d) = 18, cross-checked against labels.
  const auto z2 = generation_members(2, D(3, 3));
  CHECK(z2.size() == 18);
  auto g = materialize_diamond(D(3, 3));
  std::size_t labelled = 0;
  for (const auto& a : g.labels()) labelled += generation_number(a, g.params()) == 2u;
  CHECK(labelled == 18);

  CHECK_THROWS_AS(generation_members(0, D(2, 2)), Error);
  CHECK_THROWS_AS(generation_members(3, D(2, 2)), Error);
  CHECK_THROWS_AS(generation_members(1, {2, Branching::unbounded()}), Error);
}

TEST_CASE("generation_members partitions the inner vertices") {
  for (auto p : {D(3, 2), D(2, 3), D(4, 2)}) {
    auto g = materialize_diamond(p);
    std::multiset<DiamondAddress> all;
    for (unsigned d = 1; d <= p.level; ++d) {
      auto z = generation_members(d, p);
      CHECK(std::is_sorted(z.begin(), z.end()));
      all.insert(z.begin(), z.end());
    }
    std::multiset<DiamondAddress> inner;
    for (const auto& a : g.labels())
      if (a.is_inner()) inner.insert(a);
    CHECK(all == inner);
  }
}

TEST_CASE("bottom_neighbors matches BFS neighbourhood of Bottom") {
  CHECK(bottom_neighbors(D(1, 2)).size() == 2);
  for (unsigned m = 1; m <= 5; ++m) CHECK(bottom_neighbors(D(m, 2)).size() == (1u << m));
  CHECK(bottom_neighbors(D(0, 2)) == std::vector<DiamondAddress>{DiamondAddress::top()});

  for (auto p : {D(2, 3), D(3, 2), D(2, 4), D(1, 5), D(0, 3)}) {
    auto g = materialize_diamond(p);
    const auto dist = bfs_distances(g, g.index_of(DiamondAddress::bottom()));
    std::vector<DiamondAddress> expected;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v)
      if (dist[v] == 1) expected.push_back(g.label(v));
    auto got = bottom_neighbors(p);
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(got == expected);
    for (const auto& a : got) {
      if (a.is_inner()) CHECK(generation_number(a, p) == 1u);
    }
  }
  CHECK(bottom_neighbors(D(2, 3)).size() == 9);

  BottomNeighbors capped({3, Branching::unbounded()}, 2);
  CHECK(capped.size() == 8);
  CHECK(std::vector<DiamondAddress>(capped.begin(), capped.end()) == bottom_neighbors(D(3, 2)));
  CHECK_THROWS_AS(BottomNeighbors({3, Branching::unbounded()}), Error);
}

TEST_CASE("generation-1 vertices have degree 2, adjacency of a fresh middle") {
  auto g = materialize_diamond(D(3, 3));
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& a = g.label(v);
    if (generation_number(a, g.params()) != 1u) continue;
    REQUIRE(g.degree(v) == 2);
    SubdiamondRef edge{a.refinements()};
    std::vector<DiamondAddress> nbrs{g.label(g.neighbors(v)[0]), g.label(g.neighbors(v)[1])};
    std::sort(nbrs.begin(), nbrs.end());
    std::vector<DiamondAddress> expected{edge.bottom(), edge.top()};
    std::sort(expected.begin(), expected.end());
    CHECK(nbrs == expected);
  }
}

TEST_CASE("subdiamond structure") {
  const auto p = D(3, 2);
  auto g = materialize_diamond(p);
  for (unsigned j = 1; j <= p.level; ++j) {
    for (const auto& s : subdiamonds_at_level(j, p)) {
      CHECK(bfs_distance(g, s.bottom(), s.top()) == (Distance{1} << j));
      // 2k children: k lower ones share the bottom, k upper ones the top.
      std::size_t lower = 0, upper = 0;
      for (std::uint64_t b = 1; b <= 2; ++b) {
        lower += s.child(b, Half::Lower).bottom() == s.bottom();
        upper += s.child(b, Half::Upper).top() == s.top();
        CHECK(s.child(b, Half::Lower).top() == s.middle(b));
        CHECK(s.child(b, Half::Upper).bottom() == s.middle(b));
      }
      CHECK(lower == 2);
      CHECK(upper == 2);
      CHECK(subdiamond_vertices(g, s).size() == *DiamondParams{j, Branching(2)}.vertex_count());
    }
  }
  CHECK(subdiamonds_at_level(3, p).size() == 1);
  CHECK(subdiamonds_at_level(0, p).size() == 64);
  CHECK(subdiamonds_at_level(1, p, SubdiamondRef{{{1, Half::Upper}}}).size() == 4);
}

TEST_CASE("address text form round-trips on every materialized vertex") {
  for (auto p : {D(3, 2), D(2, 3)}) {
    auto g = materialize_diamond(p);
    for (const auto& a : g.labels()) CHECK(parse_diamond_address(to_string(a)) == a);
  }
  CHECK(to_string(DiamondAddress::inner({{1, Half::Lower}, {2, Half::Upper}}, 3)) == "I:1L.2U:3");
  CHECK(to_string(DiamondAddress::inner({}, 2)) == "I::2");
  CHECK(parse_diamond_address("I:12U:5") == DiamondAddress::inner({{12, Half::Upper}}, 5));
  for (const char* bad : {"", "X", "I:", "I:1X:2", "I:1L", "I:1L:0", "I:0L:1", "I:L:1", "I:1L.:1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_diamond_address(bad), Error);
  }
  CHECK(parse_subdiamond("*").path.empty());
  CHECK(to_string(parse_subdiamond("1L.2U")) == "1L.2U");
}

TEST_CASE("edge list and DOT export") {
  std::ostringstream edges;
  write_edge_list(edges, materialize_diamond(D(1, 3)));
  const auto text = edges.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
  CHECK(text.find("B I::1\n") != std::string::npos);

  std::ostringstream dot;
  write_dot(dot, materialize_diamond(D(2, 2)));
  const auto s = dot.str();
  CHECK(s.rfind("graph D_2_2 {", 0) == 0);
  std::size_t gen1 = 0, gen2 = 0, blank = 0;
  for (std::size_t pos = 0; (pos = s.find("[label=\"", pos)) != std::string::npos; ++pos) {
    const char c = s[pos + 8];
    gen1 += c == '1';
    gen2 += c == '2';
    blank += c == '"';
  }
  CHECK(gen1 == 8);
  CHECK(gen2 == 2);
  CHECK(blank == 2);

  std::ostringstream tree_edges;
  write_edge_list(tree_edges, materialize_tree({0}));
  CHECK(tree_edges.str().empty());
}
