#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treediam/diamond.hpp"
#include "treediam/rational.hpp"
#include "treediam/tree.hpp"

namespace treediam {

// A finite metric space given by labelled points and an integer distance
// table: a tree, or any valid table.
class FiniteMetric {
 public:
  // Points in length-lex order, labelled with their bit strings.
  static FiniteMetric from_tree(TreeSpec spec);
  // Row-major n x n table. Must be symmetric with zero diagonal and positive
  // off-diagonal entries below 2^31. Throws Precondition otherwise.
  static FiniteMetric from_table(std::vector<std::string> labels, std::vector<std::uint64_t> distances);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::uint64_t distance(std::size_t i, std::size_t j) const { return table_.at(i * labels_.size() + j); }
  std::optional<std::size_t> find(std::string_view label) const;

  // Set when built from a tree; the points are then enumerate_tree(*tree()).
  const std::optional<TreeSpec>& tree() const noexcept { return tree_; }

  FiniteMetric scaled(std::uint64_t factor) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> table_;
  std::optional<TreeSpec> tree_;
};

// Assignment of every source point (by index) to a diamond vertex.
struct EmbeddingMap {
  FiniteMetric source;
  DiamondParams target;
  std::vector<DiamondAddress> assignment;
};

struct PointPair {
  std::size_t first = 0;
  std::size_t second = 0;
  friend bool operator==(const PointPair&, const PointPair&) = default;
};

// Exact bilipschitz data of a map. With r = scaling_factor and
// C = distortion, r d(u,v) <= d(f(u),f(v)) <= r C d(u,v) for all pairs,
// with equality on the witness pairs.
struct DistortionReport {
  Rational expansion;      // max d_target / d_source
  Rational contraction;    // max d_source / d_target
  Rational distortion;     // expansion * contraction
  Rational scaling_factor; // 1 / contraction
  PointPair witness_expansion;
  PointPair witness_contraction;
  std::size_t pairs_checked = 0;
};

// Throws TrivialSource, NonInjectiveMap, Precondition or InvalidAddress.
DistortionReport evaluate_distortion(const EmbeddingMap& f);

// True iff every pair satisfies r d <= d' <= r C d.
bool satisfies_bilipschitz(const EmbeddingMap& f, const Rational& r, const Rational& c);

// Smallest level k with 2^k + 1 >= 2^(n+1) - 1, i.e. the bottom of D_{k,2}
// has enough neighbours for every non-root vertex of T_n.
unsigned star_level(unsigned depth);

struct StarEmbedding {
  unsigned level = 0;
  EmbeddingMap map;
};

// Root to Bottom of D_{k,2}; the other vertices, in length-lex order, to the
// bottom's neighbours in address order. Requires depth >= 1.
StarEmbedding star_embedding(unsigned depth);

enum class SearchMode { Exact, Local };

struct SearchConfig {
  SearchMode mode = SearchMode::Exact;
  std::uint64_t node_budget = 10'000'000;
  unsigned restarts = 8;
  std::uint64_t seed = 0;
  // Known achievable distortion; branches that cannot beat it are cut.
  std::optional<Rational> prune_bound;
  unsigned workers = 1;
  std::uint64_t vertex_budget = kDefaultVertexBudget;
  // Searches keep an all-pairs table of the target; larger targets are refused.
  std::uint64_t max_target_vertices = 4096;
  // Exact mode: start from a local-search incumbent.
  bool warm_start = true;
  // Local mode: hill-climbing sweeps per restart.
  unsigned max_sweeps = 200;
};

struct SearchResult {
  EmbeddingMap map;
  DistortionReport report;
  bool exhausted = false;  // exact minimum proven
  std::uint64_t nodes = 0;
};

// Branch and bound over injective maps. When `exhausted` is set the report
// holds the exact minimum distortion into this fixed target. Results do not
// depend on cfg.workers.
SearchResult exhaustive_search(const FiniteMetric& source, const DiamondParams& target, const SearchConfig& cfg);
SearchResult exhaustive_search(TreeSpec source, const DiamondParams& target, const SearchConfig& cfg);

// Multi-restart hill climbing (relocations and swaps). Deterministic in cfg.seed.
// When the source is a tree and the star fits in the target, the first
// restart starts from the star placement.
SearchResult local_search(const FiniteMetric& source, const DiamondParams& target, const SearchConfig& cfg);
SearchResult local_search(TreeSpec source, const DiamondParams& target, const SearchConfig& cfg);

// "<label> -> <address>" per line, in source order.
void write_embedding_map(std::ostream& out, const EmbeddingMap& f);
// Reads the format above; blank lines and lines starting with '#' are skipped.
EmbeddingMap read_embedding_map(std::istream& in, const FiniteMetric& source, const DiamondParams& target);

// Flat key/value view of a report; rationals as p/q.
std::vector<std::pair<std::string, std::string>> report_fields(const DistortionReport& report,
                                                               const FiniteMetric& source);

}  // namespace treediam
