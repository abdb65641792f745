#include "treediam/embedding.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <set>

#include "treediam/error.hpp"
#include "treediam/metric.hpp"

namespace treediam {

namespace {
__extension__ typedef unsigned __int128 wide;
}  // namespace

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

FiniteMetric FiniteMetric::from_tree(TreeSpec spec) {
  const auto vertices = enumerate_tree(spec);
  FiniteMetric m;
  m.tree_ = spec;
  m.labels_.reserve(vertices.size());
  for (const auto& v : vertices) m.labels_.push_back(to_string(v));
  m.table_.resize(vertices.size() * vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = 0; j < vertices.size(); ++j)
      m.table_[i * vertices.size() + j] = tree_distance(vertices[i], vertices[j]);
  return m;
}

FiniteMetric FiniteMetric::from_table(std::vector<std::string> labels, std::vector<std::uint64_t> distances) {
  const std::size_t n = labels.size();
  if (distances.size() != n * n) {
    throw Error(ErrorKind::Precondition, "distance table must be n x n");
  }
  if (std::set<std::string>(labels.begin(), labels.end()).size() != n) {
    throw Error(ErrorKind::Precondition, "point labels must be distinct");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto d = distances[i * n + j];
      if (d != distances[j * n + i] || (i == j) != (d == 0) || d >= (std::uint64_t{1} << 31)) {
        throw Error(ErrorKind::Precondition, "distance table entry (" + labels[i] + ", " + labels[j] +
                                                 ") violates symmetry, identity or range");
      }
    }
  }
  FiniteMetric m;
  m.labels_ = std::move(labels);
  m.table_ = std::move(distances);
  return m;
}

std::optional<std::size_t> FiniteMetric::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

FiniteMetric FiniteMetric::scaled(std::uint64_t factor) const {
  if (factor == 0) throw Error(ErrorKind::Precondition, "scale factor must be positive");
  std::vector<std::uint64_t> table = table_;
  for (auto& d : table) d *= factor;
  FiniteMetric m = from_table(labels_, std::move(table));
  return m;
}

DistortionReport evaluate_distortion(const EmbeddingMap& f) {
  const std::size_t n = f.source.size();
  if (n < 2) throw Error(ErrorKind::TrivialSource, "distortion needs at least two source points");
  if (f.assignment.size() != n) {
    throw Error(ErrorKind::Precondition, "assignment is not total on the source");
  }
  f.target.validate();
  for (const auto& a : f.assignment) validate_address(a, f.target);

  DistortionReport rep;
  // Running maxima as unreduced ratios; compared by cross-multiplication.
  std::uint64_t exp_num = 0, exp_den = 1, con_num = 0, con_den = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::uint64_t ds = f.source.distance(i, j);
      const std::uint64_t dt = diamond_distance(f.assignment[i], f.assignment[j], f.target);
      if (dt == 0) {
        throw Error(ErrorKind::NonInjectiveMap, "points " + f.source.label(i) + " and " + f.source.label(j) +
                                                    " share the image " + to_string(f.assignment[i]));
      }
      if (static_cast<wide>(dt) * exp_den > static_cast<wide>(exp_num) * ds) {
        exp_num = dt;
        exp_den = ds;
        rep.witness_expansion = {i, j};
      }
      if (static_cast<wide>(ds) * con_den > static_cast<wide>(con_num) * dt) {
        con_num = ds;
        con_den = dt;
        rep.witness_contraction = {i, j};
      }
      ++rep.pairs_checked;
    }
  }
  rep.expansion = Rational(static_cast<std::int64_t>(exp_num), static_cast<std::int64_t>(exp_den));
  rep.contraction = Rational(static_cast<std::int64_t>(con_num), static_cast<std::int64_t>(con_den));
  rep.distortion = rep.expansion * rep.contraction;
  rep.scaling_factor = 1 / rep.contraction;
  return rep;
}

bool satisfies_bilipschitz(const EmbeddingMap& f, const Rational& r, const Rational& c) {
  const std::size_t n = f.source.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rational ds(static_cast<std::int64_t>(f.source.distance(i, j)));
      const Rational dt(static_cast<std::int64_t>(diamond_distance(f.assignment[i], f.assignment[j], f.target)));
      if (r * ds > dt || dt > r * c * ds) return false;
    }
  }
  return true;
}

unsigned star_level(unsigned depth) {
  if (depth == 0 || depth + 1 >= kMaxDiamondLevel) {
    throw Error(ErrorKind::Precondition, "star embedding needs 1 <= n < " + std::to_string(kMaxDiamondLevel - 1));
  }
  const std::uint64_t tree_vertices = (std::uint64_t{2} << depth) - 1;
  unsigned k = 0;
  while ((std::uint64_t{1} << k) + 1 < tree_vertices) ++k;
  return k;
}

StarEmbedding star_embedding(unsigned depth) {
  const unsigned level = star_level(depth);
  StarEmbedding star{level, {FiniteMetric::from_tree({depth}), DiamondParams{level, Branching(2)}, {}}};
  auto& assignment = star.map.assignment;
  const std::size_t n = star.map.source.size();
  assignment.reserve(n);
  assignment.push_back(DiamondAddress::bottom());
  BottomNeighbors neighbours(star.map.target);
  for (auto it = neighbours.begin(); assignment.size() < n; ++it) assignment.push_back(*it);
  return star;
}

void write_embedding_map(std::ostream& out, const EmbeddingMap& f) {
  for (std::size_t i = 0; i < f.assignment.size(); ++i) {
    out << f.source.label(i) << " -> " << to_string(f.assignment[i]) << '\n';
  }
}

EmbeddingMap read_embedding_map(std::istream& in, const FiniteMetric& source, const DiamondParams& target) {
  EmbeddingMap f{source, target, {}};
  std::vector<std::optional<DiamondAddress>> slots(source.size());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto arrow = line.find(" -> ");
    if (arrow == std::string::npos) throw Error(ErrorKind::Parse, "expected '<point> -> <address>': " + line);
    const auto idx = source.find(std::string_view(line).substr(0, arrow));
    if (!idx) throw Error(ErrorKind::Parse, "unknown source point in: " + line);
    if (slots[*idx]) throw Error(ErrorKind::Parse, "point assigned twice: " + source.label(*idx));
    auto addr = parse_diamond_address(std::string_view(line).substr(arrow + 4));
    validate_address(addr, target);
    slots[*idx] = std::move(addr);
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw Error(ErrorKind::Parse, "no image given for point " + source.label(i));
    f.assignment.push_back(std::move(*slots[i]));
  }
  return f;
}

std::vector<std::pair<std::string, std::string>> report_fields(const DistortionReport& report,
                                                               const FiniteMetric& source) {
  return {
      {"expansion", to_string(report.expansion)},
      {"contraction", to_string(report.contraction)},
      {"distortion", to_string(report.distortion)},
      {"scaling_factor", to_string(report.scaling_factor)},
      {"witness_expansion_u", source.label(report.witness_expansion.first)},
      {"witness_expansion_v", source.label(report.witness_expansion.second)},
      {"witness_contraction_u", source.label(report.witness_contraction.first)},
      {"witness_contraction_v", source.label(report.witness_contraction.second)},
      {"pairs_checked", std::to_string(report.pairs_checked)},
  };
}

}  // namespace treediam
