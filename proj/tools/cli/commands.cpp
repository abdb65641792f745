#include "commands.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "treediam/diamond.hpp"
#include "treediam/embedding.hpp"
#include "treediam/error.hpp"
#include "treediam/graph.hpp"
#include "treediam/graph_io.hpp"
#include "treediam/metric.hpp"
#include "treediam/observations.hpp"
#include "treediam/separated_set.hpp"
#include "treediam/witness.hpp"

#ifndef TREEDIAM_VERSION
#define TREEDIAM_VERSION "0.0.0"
#endif

namespace treediam::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Options {
  std::string kind;
  unsigned n = 0;
  bool n_set = false;
  unsigned m = 0;
  std::string k = "2";
  std::string u;
  std::string v;
  std::string format;
  std::string out;
  std::uint64_t budget_vertices = kDefaultVertexBudget;
  std::uint64_t budget_nodes = 10'000'000;
  std::uint64_t max_target_vertices = 4096;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  unsigned restarts = 8;
  std::string mode;
  std::string prune_bound;
  std::string n_range;
  std::vector<std::string> modes;
  std::string region;
  std::uint64_t separation = 0;
  int p = -1;
  std::size_t exact_limit = kDefaultExactRegionLimit;
  unsigned max_gap = 2;
  std::string suite;
  std::uint64_t witness_n = 0;
  std::string alpha_schedule;
  std::string alpha;
};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err), start_(Clock::now()) {}

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

  json manifest(const std::string& command, json params, std::uint64_t seed) const {
    const std::chrono::duration<double> elapsed = Clock::now() - start_;
    json m;
    m["command"] = command;
    m["params"] = std::move(params);
    m["seed"] = seed;
    m["version"] = TREEDIAM_VERSION;
    m["wall_time"] = std::round(elapsed.count() * 1e6) / 1e6;
    return m;
  }

  // Writes to `path`, or to standard output when it is empty.
  void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::Precondition, "cannot open '" + path + "' for writing");
    file << text;
    if (!file) throw Error(ErrorKind::Precondition, "failed writing '" + path + "'");
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  Clock::time_point start_;
};

Branching parse_branching(const std::string& text) {
  if (text == "inf" || text == "unbounded") return Branching::unbounded();
  std::uint64_t k = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc() || ptr != text.data() + text.size() || k == 0) {
    throw Error(ErrorKind::Parse, "branching must be a positive integer or 'inf', got '" + text + "'");
  }
  return Branching(k);
}

DiamondParams diamond_params(const Options& o) {
  DiamondParams params{o.m, parse_branching(o.k)};
  params.validate();
  return params;
}

json params_json(const DiamondParams& params) {
  json j;
  j["m"] = params.level;
  if (params.branching.is_finite()) {
    j["k"] = params.branching.value();
  } else {
    j["k"] = "inf";
  }
  return j;
}

std::string decimal(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", to_double(r));
  return buf;
}

json report_json(const DistortionReport& r, const FiniteMetric& source) {
  json j;
  j["expansion"] = to_string(r.expansion);
  j["contraction"] = to_string(r.contraction);
  j["distortion"] = to_string(r.distortion);
  j["scaling_factor"] = to_string(r.scaling_factor);
  j["witness_expansion"] = {source.label(r.witness_expansion.first), source.label(r.witness_expansion.second)};
  j["witness_contraction"] = {source.label(r.witness_contraction.first), source.label(r.witness_contraction.second)};
  j["pairs_checked"] = r.pairs_checked;
  return j;
}

json map_json(const EmbeddingMap& f) {
  json arr = json::array();
  for (std::size_t i = 0; i < f.assignment.size(); ++i) {
    arr.push_back({{"point", f.source.label(i)}, {"image", to_string(f.assignment[i])}});
  }
  return arr;
}

SearchConfig search_config(const Options& o) {
  SearchConfig cfg;
  cfg.node_budget = o.budget_nodes;
  cfg.vertex_budget = o.budget_vertices;
  cfg.max_target_vertices = o.max_target_vertices;
  cfg.seed = o.seed;
  cfg.workers = std::max(1U, o.workers);
  cfg.restarts = o.restarts;
  if (!o.prune_bound.empty()) cfg.prune_bound = parse_rational(o.prune_bound);
  return cfg;
}

// ---- gen ----

int cmd_gen(Session& s, const Options& o) {
  std::ostringstream body;
  json params;
  params["kind"] = o.kind;
  if (o.kind == "tree") {
    params["n"] = o.n;
  } else {
    params.update(params_json(diamond_params(o)));
  }
  params["format"] = o.format;
  params["budget_vertices"] = o.budget_vertices;
  const std::string comment = o.format == "dot" ? "// " : "# ";
  body << comment << s.manifest("gen", params, o.seed).dump() << '\n';
  if (o.kind == "tree") {
    const TreeGraph g = materialize_tree({o.n}, o.budget_vertices);
    o.format == "dot" ? write_dot(body, g) : write_edge_list(body, g);
  } else {
    const DiamondGraph g = materialize_diamond(diamond_params(o), o.budget_vertices);
    o.format == "dot" ? write_dot(body, g) : write_edge_list(body, g);
  }
  s.emit(o.out, body.str());
  return kExitOk;
}

// ---- dist ----

int cmd_dist(Session& s, const Options& o) {
  Distance d = 0;
  json params;
  params["kind"] = o.kind;
  if (o.kind == "tree") {
    const TreeVertex a = parse_tree_vertex(o.u);
    const TreeVertex b = parse_tree_vertex(o.v);
    if (o.n_set) {
      params["n"] = o.n;
      const TreeSpec spec{o.n};
      for (const auto& x : {a, b}) {
        if (!spec.contains(x)) {
          throw Error(ErrorKind::VertexNotInGraph, to_string(x) + " is not a vertex of T_" + std::to_string(o.n));
        }
      }
    }
    d = tree_distance(a, b);
  } else {
    const DiamondParams dp = diamond_params(o);
    params.update(params_json(dp));
    const DiamondAddress a = parse_diamond_address(o.u);
    const DiamondAddress b = parse_diamond_address(o.v);
    validate_address(a, dp);
    validate_address(b, dp);
    d = diamond_distance(a, b, dp);
  }
  if (o.format == "json") {
    params["u"] = o.u;
    params["v"] = o.v;
    json j;
    j["manifest"] = s.manifest("dist", params, o.seed);
    j["distance"] = d;
    s.emit(o.out, j.dump(2) + "\n");
  } else {
    s.emit(o.out, std::to_string(d) + "\n");
  }
  return kExitOk;
}

// ---- embed ----

int cmd_embed(Session& s, const Options& o) {
  json params;
  params["n"] = o.n;
  params["mode"] = o.mode;
  EmbeddingMap map;
  DistortionReport report;
  json search;
  if (o.mode == "star") {
    StarEmbedding star = star_embedding(o.n);
    params["m"] = star.level;
    params["k"] = 2;
    map = std::move(star.map);
    report = evaluate_distortion(map);
  } else {
    const DiamondParams target = diamond_params(o);
    params.update(params_json(target));
    params["budget_nodes"] = o.budget_nodes;
    params["budget_vertices"] = o.budget_vertices;
    params["max_target_vertices"] = o.max_target_vertices;
    params["restarts"] = o.restarts;
    params["workers"] = o.workers;
    if (!o.prune_bound.empty()) params["prune_bound"] = o.prune_bound;
    SearchConfig cfg = search_config(o);
    cfg.mode = o.mode == "exact" ? SearchMode::Exact : SearchMode::Local;
    SearchResult res = o.mode == "exact" ? exhaustive_search(TreeSpec{o.n}, target, cfg)
                                         : local_search(TreeSpec{o.n}, target, cfg);
    map = std::move(res.map);
    report = res.report;
    search["exhausted"] = res.exhausted;
    search["nodes"] = res.nodes;
  }
  const json manifest = s.manifest("embed", params, o.seed);
  json j;
  j["manifest"] = manifest;
  j["source"] = {{"kind", "tree"}, {"n", o.n}, {"points", map.source.size()}};
  j["target"] = params_json(map.target);
  j["report"] = report_json(report, map.source);
  if (!search.is_null()) j["search"] = search;

  if (o.out.empty()) {
    j["map"] = map_json(map);
    s.emit("", j.dump(2) + "\n");
  } else {
    std::ostringstream text;
    text << "# " << manifest.dump() << '\n';
    write_embedding_map(text, map);
    s.emit(o.out + ".map", text.str());
    s.emit(o.out + ".json", j.dump(2) + "\n");
  }
  return kExitOk;
}

// ---- table ----

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  auto number = [&](std::string_view part) {
    unsigned x = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), x);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw Error(ErrorKind::Parse, "bad range '" + text + "', expected A..B or A");
    }
    return x;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const unsigned x = number(text);
    return {x, x};
  }
  return {number(std::string_view(text).substr(0, dots)), number(std::string_view(text).substr(dots + 2))};
}

const std::vector<std::string> kTableColumns = {
    "n",
    "star_level",
    "star_distortion",
    "star_distortion_decimal_lossy",
    "exact_target",
    "exact_status",
    "exact_distortion",
    "exact_distortion_decimal_lossy",
    "exact_exhausted",
    "exact_nodes",
    "local_target",
    "local_status",
    "local_distortion",
    "local_distortion_decimal_lossy",
    "n_over_log2n_decimal_lossy",
    "two_n",
};

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

int cmd_table(Session& s, const Options& o) {
  const auto [from, to] = parse_range(o.n_range);
  if (from == 0 && from <= to) throw Error(ErrorKind::Precondition, "tree depth must be at least 1");
  const bool want_star = std::count(o.modes.begin(), o.modes.end(), "star") > 0;
  const bool want_exact = std::count(o.modes.begin(), o.modes.end(), "exact") > 0;
  const bool want_local = std::count(o.modes.begin(), o.modes.end(), "local") > 0;

  json params;
  params["n"] = o.n_range;
  params["modes"] = o.modes;
  std::optional<DiamondParams> target;
  if (want_exact || want_local) {
    target = diamond_params(o);
    params.update(params_json(*target));
    params["budget_nodes"] = o.budget_nodes;
    params["budget_vertices"] = o.budget_vertices;
    params["max_target_vertices"] = o.max_target_vertices;
    params["restarts"] = o.restarts;
    params["workers"] = o.workers;
  }
  const std::string target_name =
      target ? "D_" + std::to_string(target->level) + "_" + csv_cell(params_json(*target)["k"]) : "";

  json rows = json::array();
  for (unsigned n = from; n <= to && from <= to; ++n) {
    json row;
    for (const auto& c : kTableColumns) row[c] = nullptr;
    row["n"] = n;
    row["two_n"] = 2 * n;
    if (n >= 2) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6f", n / std::log2(static_cast<double>(n)));
      row["n_over_log2n_decimal_lossy"] = buf;
    }
    row["exact_status"] = "not-run";
    row["local_status"] = "not-run";
    if (want_star) {
      const StarEmbedding star = star_embedding(n);
      const DistortionReport r = evaluate_distortion(star.map);
      row["star_level"] = star.level;
      row["star_distortion"] = to_string(r.distortion);
      row["star_distortion_decimal_lossy"] = decimal(r.distortion);
    }
    auto run_search = [&](bool exact) {
      const std::string prefix = exact ? "exact_" : "local_";
      row[prefix + "target"] = target_name;
      SearchConfig cfg = search_config(o);
      cfg.mode = exact ? SearchMode::Exact : SearchMode::Local;
      try {
        const SearchResult res =
            exact ? exhaustive_search(TreeSpec{n}, *target, cfg) : local_search(TreeSpec{n}, *target, cfg);
        row[prefix + "status"] = exact && !res.exhausted ? "incomplete" : "ok";
        row[prefix + "distortion"] = to_string(res.report.distortion);
        row[prefix + "distortion_decimal_lossy"] = decimal(res.report.distortion);
        if (exact) {
          row["exact_exhausted"] = res.exhausted;
          row["exact_nodes"] = res.nodes;
        }
      } catch (const Error& e) {
        row[prefix + "status"] = std::string(to_string(e.kind()));
      }
    };
    if (want_exact) run_search(true);
    if (want_local) run_search(false);
    rows.push_back(std::move(row));
  }

  const json manifest = s.manifest("table", params, o.seed);
  std::ostringstream text;
  if (o.format == "json") {
    json j;
    j["manifest"] = manifest;
    j["columns"] = kTableColumns;
    j["rows"] = rows;
    text << j.dump(2) << '\n';
  } else {
    text << "# " << manifest.dump() << '\n';
    for (std::size_t i = 0; i < kTableColumns.size(); ++i) text << (i ? "," : "") << kTableColumns[i];
    text << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < kTableColumns.size(); ++i) {
        text << (i ? "," : "") << csv_cell(row[kTableColumns[i]]);
      }
      text << '\n';
    }
  }
  s.emit(o.out, text.str());
  return kExitOk;
}

// ---- sepset ----

SubdiamondRef region_of(const Options& o) {
  return o.region.empty() ? SubdiamondRef::whole() : parse_subdiamond(o.region);
}

SeparationMode separation_mode(const std::string& text) {
  if (text == "greedy") return SeparationMode::Greedy;
  if (text == "auto") return SeparationMode::Auto;
  return SeparationMode::Exact;
}

int cmd_sepset(Session& s, const Options& o) {
  const DiamondParams params = diamond_params(o);
  const SubdiamondRef region = region_of(o);
  validate_subdiamond(region, params);
  if ((o.separation == 0) == (o.p < 0)) {
    throw Error(ErrorKind::Parse, "give exactly one of --separation and -p");
  }
  const std::uint64_t sep = o.p >= 0 ? std::uint64_t{1} << o.p : o.separation;
  const DiamondGraph g = materialize_diamond(params, o.budget_vertices);
  const SeparatedSetResult res = max_separated_set(g, region, sep, separation_mode(o.mode), o.exact_limit);

  json mp = params_json(params);
  mp["region"] = to_string(region);
  mp["separation"] = sep;
  mp["mode"] = o.mode;
  mp["exact_limit"] = o.exact_limit;
  mp["budget_vertices"] = o.budget_vertices;
  json j;
  j["manifest"] = s.manifest("sepset", mp, o.seed);
  j["region"] = to_string(region);
  j["region_level"] = region.level(params);
  j["region_vertices"] = res.region_vertices;
  j["separation"] = sep;
  j["exact"] = res.exact;
  j["size"] = res.size();
  json set = json::array();
  for (const auto& v : res.set) set.push_back(to_string(v));
  j["set"] = set;

  int code = kExitOk;
  const unsigned q = region.level(params);
  if (std::has_single_bit(sep) && params.branching.is_finite() && params.branching.value() >= 2) {
    const auto p = static_cast<unsigned>(std::countr_zero(sep));
    if (p <= q) {
      const std::uint64_t bound = lemma_bound(q, p, params.branching);
      j["bound"] = bound;
      j["within_bound"] = res.size() <= bound;
      if (res.size() > bound) code = kExitCheckFailed;
    }
  }
  s.emit(o.out, j.dump(2) + "\n");
  return code;
}

// ---- verify ----

json verify_oracle(const Options& o, bool& passed) {
  const DiamondParams params = diamond_params(o);
  const DiamondGraph g = materialize_diamond(params, o.budget_vertices);
  const DistanceMatrix bfs = all_pairs_bfs(g);
  json failures = json::array();
  std::uint64_t pairs = 0;
  for (VertexIndex a = 0; a < g.vertex_count(); ++a) {
    for (VertexIndex b = a; b < g.vertex_count(); ++b) {
      ++pairs;
      const Distance d = diamond_distance(g.label(a), g.label(b), params);
      if (d != bfs(a, b) && failures.size() < 10) {
        failures.push_back({{"u", to_string(g.label(a))}, {"v", to_string(g.label(b))}, {"oracle", d},
                            {"bfs", bfs(a, b)}});
      }
    }
  }
  passed = failures.empty();
  json j;
  j["vertices"] = g.vertex_count();
  j["pairs_checked"] = pairs;
  j["failures"] = failures;
  return j;
}

json verify_observations(const Options& o, bool& passed) {
  const DiamondParams params = diamond_params(o);
  const DiamondGraph g = materialize_diamond(params, o.budget_vertices);
  json failures = json::array();
  std::uint64_t vertices = 0;
  for (const DiamondAddress& v : g.labels()) {
    if (!v.is_inner()) continue;
    ++vertices;
    const NeighborhoodReport r = check_neighborhood_structure(g, v);
    if (!r.passed()) {
      json f{{"check", "neighborhood"},
             {"vertex", to_string(v)},
             {"ball_equals_union", r.ball_equals_union},
             {"overlap_is_vertex", r.overlap_is_vertex}};
      if (r.witness) f["witness"] = to_string(*r.witness);
      failures.push_back(f);
    }
  }
  json components = json::array();
  for (unsigned d = 1; d <= params.level; ++d) {
    const ComponentReport r = check_component_diameters(g, d);
    json c{{"d", d},
           {"removed", r.removed},
           {"components", r.components},
           {"max_induced_diameter", r.max_induced_diameter},
           {"max_ambient_diameter", r.max_ambient_diameter},
           {"bound", r.bound},
           {"metric_discrepancies", r.metric_discrepancies},
           {"passed", r.passed()}};
    if (r.witness) c["witness"] = {to_string(r.witness->first), to_string(r.witness->second)};
    if (!r.passed()) failures.push_back({{"check", "components"}, {"d", d}, {"witness", c["witness"]}});
    components.push_back(c);
  }
  passed = failures.empty();
  json j;
  j["neighborhoods_checked"] = vertices;
  j["components"] = components;
  j["failures"] = failures;
  return j;
}

json verify_lemma(const Options& o, bool& passed) {
  const DiamondParams params = diamond_params(o);
  if (!params.branching.is_finite() || params.branching.value() < 2) {
    throw Error(ErrorKind::Precondition, "the separated-set bound needs finite branching k >= 2");
  }
  const std::uint64_t k = params.branching.value();
  const DiamondGraph g = materialize_diamond(params, o.budget_vertices);
  json levels = json::array();
  json failures = json::array();
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  for (unsigned q = 0; q <= params.level; ++q) {
    const std::vector<SubdiamondRef> regions = subdiamonds_at_level(q, params);
    const unsigned low = q > o.max_gap ? q - o.max_gap : 0;
    for (unsigned p = low; p <= q; ++p) {
      const std::uint64_t bound = lemma_bound(q, p, params.branching);
      const std::uint64_t expected_count = *DiamondParams{q - p, params.branching}.edge_count();
      std::size_t max_size = 0;
      std::size_t max_cap = 0;
      std::uint64_t done = 0;
      for (const SubdiamondRef& region : regions) {
        if (subdiamond_vertices(g, region).size() > o.exact_limit) {
          ++skipped;
          continue;
        }
        const SeparatedSetResult res =
            max_separated_set(g, region, std::uint64_t{1} << p, SeparationMode::Exact, o.exact_limit);
        const SubdiamondCap cap = max_points_per_subdiamond(res.set, params, region, p);
        const std::uint64_t count = count_subdiamonds(params, region, p);
        const bool separated = is_separated(res.set, std::uint64_t{1} << p, params);
        max_size = std::max(max_size, res.size());
        max_cap = std::max(max_cap, cap.max_count);
        ++done;
        ++checked;
        if (res.size() > bound || cap.max_count > k || count != expected_count || !separated) {
          failures.push_back({{"region", to_string(region)},
                              {"q", q},
                              {"p", p},
                              {"size", res.size()},
                              {"bound", bound},
                              {"max_per_subdiamond", cap.max_count},
                              {"worst_subdiamond", to_string(cap.worst)},
                              {"subdiamond_count", count},
                              {"separated", separated}});
        }
      }
      if (done > 0) {
        levels.push_back({{"q", q},
                          {"p", p},
                          {"regions", done},
                          {"max_size", max_size},
                          {"bound", bound},
                          {"max_per_subdiamond", max_cap}});
      }
    }
  }
  passed = failures.empty() && checked > 0;
  json j;
  j["regions_checked"] = checked;
  j["regions_skipped"] = skipped;
  j["levels"] = levels;
  j["failures"] = failures;
  return j;
}

json verify_witness(const Options& o, bool& passed, json& params) {
  const DiamondParams dp = diamond_params(o);
  if (!dp.branching.is_finite()) throw Error(ErrorKind::Precondition, "witness arithmetic needs finite k");
  if (o.p < 0) throw Error(ErrorKind::Parse, "-p is required for the witness suite");
  if (o.alpha.empty() == o.alpha_schedule.empty()) {
    throw Error(ErrorKind::Parse, "give exactly one of --alpha and --alpha-schedule");
  }
  const Rational alpha = o.alpha.empty() ? schedule_alpha(parse_alpha_schedule(o.alpha_schedule), o.witness_n)
                                         : parse_rational(o.alpha);
  params["n"] = o.witness_n;
  params["p"] = o.p;
  if (!o.alpha_schedule.empty()) params["alpha_schedule"] = o.alpha_schedule;
  params["alpha"] = to_string(alpha);

  const auto w = witness_params(o.witness_n, dp.branching.value(), static_cast<unsigned>(o.p), alpha);
  json j;
  j["alpha"] = to_string(alpha);
  if (!w) {
    passed = false;
    j["r"] = witness_r(o.witness_n, dp.branching.value());
    j["exists"] = false;
    j["reason"] = "n - r < 2";
    return j;
  }
  auto checks = [](const WitnessChecks& c) {
    return json{{"separation", c.separation}, {"packing", c.packing}, {"depth", c.depth}};
  };
  j["exists"] = true;
  j["r"] = w->r;
  j["r_exact"] = w->r_exact;
  j["d"] = w->d;
  j["relative"] = checks(w->relative);
  j["absolute"] = checks(w->absolute);
  j["feasible"] = w->feasible();
  j["consistent"] = w->consistent();
  passed = w->feasible() && w->consistent();
  return j;
}

int cmd_verify(Session& s, const Options& o) {
  json params;
  params["suite"] = o.suite;
  if (o.suite == "witness") {
    params.update(params_json(DiamondParams{0, parse_branching(o.k)}));
    params.erase("m");
  } else {
    params.update(params_json(diamond_params(o)));
    params["budget_vertices"] = o.budget_vertices;
  }
  if (o.suite == "lemma") {
    params["max_gap"] = o.max_gap;
    params["exact_limit"] = o.exact_limit;
  }
  bool passed = false;
  json body;
  if (o.suite == "oracle") {
    body = verify_oracle(o, passed);
  } else if (o.suite == "observations") {
    body = verify_observations(o, passed);
  } else if (o.suite == "lemma") {
    body = verify_lemma(o, passed);
  } else {
    body = verify_witness(o, passed, params);
  }
  json j;
  j["manifest"] = s.manifest("verify", params, o.seed);
  j["suite"] = o.suite;
  j["passed"] = passed;
  j.update(body);
  s.emit(o.out, j.dump(2) + "\n");
  return passed ? kExitOk : kExitCheckFailed;
}

void add_diamond_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("-m,--level", o.m, "Diamond level m");
  cmd->add_option("-k,--branching", o.k, "Branching k (integer or 'inf')")->capture_default_str();
}

void add_out_flag(CLI::App* cmd, Options& o) { cmd->add_option("--out", o.out, "Output file (default: stdout)"); }

void add_search_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--budget-nodes", o.budget_nodes, "Search node budget")->capture_default_str();
  cmd->add_option("--budget-vertices", o.budget_vertices, "Materialization vertex budget")->capture_default_str();
  cmd->add_option("--max-target-vertices", o.max_target_vertices, "Largest target the searches accept")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  cmd->add_option("--workers", o.workers, "Exact-search worker threads")->capture_default_str();
  cmd->add_option("--restarts", o.restarts, "Local-search restarts")->capture_default_str();
  cmd->add_option("--prune-bound", o.prune_bound, "Known achievable distortion p/q");
}

}  // namespace

std::string strip_wall_time(std::string_view text) {
  static const std::regex field(R"(,\s*"wall_time"\s*:\s*[-+0-9.eE]+)");
  return std::regex_replace(std::string(text), field, "");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Binary trees, diamond graphs and low-distortion embeddings between them", "treediam"};
  app.set_version_flag("--version", TREEDIAM_VERSION);
  app.require_subcommand(1);

  CLI::App* gen = app.add_subcommand("gen", "Write a tree or diamond graph as an edge list or DOT");
  gen->add_option("kind", o.kind, "tree or diamond")->required()->check(CLI::IsMember({"tree", "diamond"}));
  gen->add_option("-n,--depth", o.n, "Tree depth n");
  add_diamond_flags(gen, o);
  o.format = "edges";
  gen->add_option("--format", o.format, "edges or dot")->check(CLI::IsMember({"edges", "dot"}));
  gen->add_option("--budget-vertices", o.budget_vertices, "Materialization vertex budget")->capture_default_str();
  add_out_flag(gen, o);

  CLI::App* dist = app.add_subcommand("dist", "Exact distance between two vertices");
  dist->add_option("kind", o.kind, "tree or diamond")->required()->check(CLI::IsMember({"tree", "diamond"}));
  dist->add_option("u", o.u, "First vertex")->required();
  dist->add_option("v", o.v, "Second vertex")->required();
  dist->add_option("-n,--depth", o.n, "Tree depth n (checks membership)");
  add_diamond_flags(dist, o);
  dist->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  add_out_flag(dist, o);

  CLI::App* embed = app.add_subcommand("embed", "Build or search an embedding of T_n into a diamond");
  embed->add_option("-n,--depth", o.n, "Tree depth n")->required();
  embed->add_option("--mode", o.mode, "star, exact or local")
      ->required()
      ->check(CLI::IsMember({"star", "exact", "local"}));
  add_diamond_flags(embed, o);
  add_search_flags(embed, o);
  embed->add_option("--out", o.out, "Write PREFIX.map and PREFIX.json instead of stdout");

  CLI::App* table = app.add_subcommand("table", "Distortion table over a range of tree depths");
  table->add_option("-n,--depth", o.n_range, "Depth range A..B (or a single A)")->required();
  o.modes = {"star"};
  table->add_option("--modes", o.modes, "Any of star, exact, local")
      ->delimiter(',')
      ->check(CLI::IsMember({"star", "exact", "local"}));
  add_diamond_flags(table, o);
  add_search_flags(table, o);
  table->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  add_out_flag(table, o);

  CLI::App* sepset = app.add_subcommand("sepset", "Largest separated vertex set in a subdiamond");
  add_diamond_flags(sepset, o);
  sepset->add_option("--region", o.region, "Subdiamond path such as 1L.2U (default: whole graph)");
  sepset->add_option("--separation", o.separation, "Minimum pairwise distance");
  sepset->add_option("-p", o.p, "Separation 2^p");
  o.mode = "exact";
  sepset->add_option("--mode", o.mode, "exact, greedy or auto")->check(CLI::IsMember({"exact", "greedy", "auto"}));
  sepset->add_option("--exact-limit", o.exact_limit, "Largest region for exact mode")->capture_default_str();
  sepset->add_option("--budget-vertices", o.budget_vertices, "Materialization vertex budget")->capture_default_str();
  add_out_flag(sepset, o);

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", o.suite, "lemma, observations, witness or oracle")
      ->required()
      ->check(CLI::IsMember({"lemma", "observations", "witness", "oracle"}));
  add_diamond_flags(verify, o);
  verify->add_option("-n", o.witness_n, "Tree depth n (witness)");
  verify->add_option("-p", o.p, "Scaling exponent p (witness)");
  verify->add_option("--alpha-schedule", o.alpha_schedule, "n-over-log2sq or n-over-3 (witness)");
  verify->add_option("--alpha", o.alpha, "Explicit alpha p/q (witness)");
  verify->add_option("--max-gap", o.max_gap, "Largest q - p (lemma)")->capture_default_str();
  verify->add_option("--exact-limit", o.exact_limit, "Largest region checked exactly (lemma)")
      ->capture_default_str();
  verify->add_option("--budget-vertices", o.budget_vertices, "Materialization vertex budget")->capture_default_str();
  add_out_flag(verify, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Session session(out, err);
  try {
    if (*gen) {
      if (gen->count("-n") == 0 && o.kind == "tree") throw Error(ErrorKind::Parse, "gen tree needs -n");
      return cmd_gen(session, o);
    }
    if (*dist) {
      o.n_set = dist->count("-n") > 0;
      return cmd_dist(session, o);
    }
    if (*embed) {
      if (o.mode != "star" && embed->count("-m") == 0) throw Error(ErrorKind::Parse, "--mode " + o.mode + " needs -m");
      return cmd_embed(session, o);
    }
    if (*table) {
      if (o.format.empty()) o.format = "csv";
      const bool searches = std::any_of(o.modes.begin(), o.modes.end(), [](const auto& m) { return m != "star"; });
      if (searches && table->count("-m") == 0) throw Error(ErrorKind::Parse, "exact and local modes need -m");
      return cmd_table(session, o);
    }
    if (*sepset) return cmd_sepset(session, o);
    if (*verify) {
      if (o.suite == "witness" && verify->count("-n") == 0) throw Error(ErrorKind::Parse, "witness needs -n");
      return cmd_verify(session, o);
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.is_budget() ? kExitBudget : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace treediam::cli
