#include "treediam/diamond.hpp"

#include <charconv>

#include "treediam/error.hpp"

namespace treediam {

namespace {

bool mul_checked(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return !__builtin_mul_overflow(a, b, &out);
}

bool add_checked(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return !__builtin_add_overflow(a, b, &out);
}

void check_branch(std::uint64_t b, const DiamondParams& params, std::string_view what) {
  if (b == 0) {
    throw Error(ErrorKind::InvalidAddress, std::string(what) + " branch index must be positive");
  }
  if (params.branching.is_finite() && b > params.branching.value()) {
    throw Error(ErrorKind::InvalidAddress, std::string(what) + " branch index " + std::to_string(b) +
                                               " exceeds k = " + std::to_string(params.branching.value()));
  }
}

void require_finite(const DiamondParams& params, std::string_view op) {
  if (params.branching.is_unbounded()) {
    throw Error(ErrorKind::UnboundedNotMaterializable, std::string(op) + " requires finite branching");
  }
}

void extend_paths(RefinementPath& prefix, std::size_t target_len, std::uint64_t k,
                  std::vector<SubdiamondRef>& out) {
  if (prefix.size() == target_len) {
    out.push_back(SubdiamondRef{prefix});
    return;
  }
  for (std::uint64_t b = 1; b <= k; ++b) {
    for (Half h : {Half::Lower, Half::Upper}) {
      prefix.push_back({b, h});
      extend_paths(prefix, target_len, k, out);
      prefix.pop_back();
    }
  }
}

std::uint64_t parse_uint(std::string_view text, std::string_view context) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Parse, "expected a positive integer in " + std::string(context) + ", got '" +
                                      std::string(text) + "'");
  }
  return value;
}

RefinementPath parse_steps(std::string_view text, std::string_view context) {
  RefinementPath path;
  if (text.empty()) return path;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    if (dot == std::string_view::npos) dot = text.size();
    std::string_view step = text.substr(pos, dot - pos);
    if (step.size() < 2) {
      throw Error(ErrorKind::Parse, "malformed refinement step '" + std::string(step) + "' in " + std::string(context));
    }
    Half h;
    switch (step.back()) {
      case 'L': h = Half::Lower; break;
      case 'U': h = Half::Upper; break;
      default:
        throw Error(ErrorKind::Parse, "refinement half must be L or U in '" + std::string(step) + "'");
    }
    std::uint64_t b = parse_uint(step.substr(0, step.size() - 1), context);
    if (b == 0) throw Error(ErrorKind::Parse, "branch index must be positive in " + std::string(context));
    path.push_back({b, h});
    pos = dot + 1;
  }
  return path;
}

std::string steps_to_string(const RefinementPath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i].branch);
    out += path[i].half == Half::Lower ? 'L' : 'U';
  }
  return out;
}

}  // namespace

std::optional<std::uint64_t> DiamondParams::edge_count() const noexcept {
  if (branching.is_unbounded()) return std::nullopt;
  std::uint64_t edges = 1;
  for (unsigned i = 0; i < level; ++i) {
    if (!mul_checked(edges, 2 * branching.value(), edges)) return std::nullopt;
  }
  return edges;
}

std::optional<std::uint64_t> DiamondParams::vertex_count() const noexcept {
  if (branching.is_unbounded()) return std::nullopt;
  // Step t refines (2k)^t edges, each contributing k new middles.
  std::uint64_t total = 2;
  std::uint64_t edges = 1;
  const std::uint64_t k = branching.value();
  for (unsigned t = 0; t < level; ++t) {
    std::uint64_t created = 0;
    if (!mul_checked(edges, k, created) || !add_checked(total, created, total)) return std::nullopt;
    if (t + 1 < level && !mul_checked(edges, 2 * k, edges)) return std::nullopt;
  }
  return total;
}

void DiamondParams::validate() const {
  if (branching.is_finite() && branching.value() < 2) {
    throw Error(ErrorKind::Precondition, "branching must be at least 2");
  }
  if (level > kMaxDiamondLevel) {
    throw Error(ErrorKind::OutOfRange, "diamond level exceeds " + std::to_string(kMaxDiamondLevel));
  }
}

void validate_address(const DiamondAddress& v, const DiamondParams& params) {
  if (!v.is_inner()) return;
  if (v.refinements().size() + 1 > params.level) {
    throw Error(ErrorKind::InvalidAddress, "address " + to_string(v) + " has " +
                                               std::to_string(v.refinements().size()) +
                                               " refinements; at most m-1 = " +
                                               std::to_string(static_cast<int>(params.level) - 1) +
                                               " allowed");
  }
  for (const auto& step : v.refinements()) check_branch(step.branch, params, "refinement");
  check_branch(v.middle_branch(), params, "middle");
}

bool is_valid_address(const DiamondAddress& v, const DiamondParams& params) noexcept {
  try {
    validate_address(v, params);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::optional<unsigned> generation_number(const DiamondAddress& v, const DiamondParams& params) {
  validate_address(v, params);
  if (!v.is_inner()) return std::nullopt;
  return params.level - v.creation_step() + 1;
}

std::vector<DiamondAddress> generation_members(unsigned d, const DiamondParams& params) {
  require_finite(params, "generation_members");
  if (d < 1 || d > params.level) {
    throw Error(ErrorKind::OutOfRange, "generation " + std::to_string(d) + " outside 1.." +
                                           std::to_string(params.level));
  }
  const std::uint64_t k = params.branching.value();
  std::vector<SubdiamondRef> edges;
  RefinementPath prefix;
  extend_paths(prefix, params.level - d, k, edges);
  std::vector<DiamondAddress> out;
  out.reserve(edges.size() * k);
  for (auto& e : edges) {
    for (std::uint64_t b = 1; b <= k; ++b) out.push_back(DiamondAddress::inner(e.path, b));
  }
  return out;
}

DiamondAddress SubdiamondRef::bottom() const {
  for (std::size_t t = path.size(); t-- > 0;) {
    if (path[t].half == Half::Upper) {
      return DiamondAddress::inner(RefinementPath(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(t)),
                                   path[t].branch);
    }
  }
  return DiamondAddress::bottom();
}

DiamondAddress SubdiamondRef::top() const {
  for (std::size_t t = path.size(); t-- > 0;) {
    if (path[t].half == Half::Lower) {
      return DiamondAddress::inner(RefinementPath(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(t)),
                                   path[t].branch);
    }
  }
  return DiamondAddress::top();
}

SubdiamondRef SubdiamondRef::child(std::uint64_t branch, Half half) const {
  SubdiamondRef c{path};
  c.path.push_back({branch, half});
  return c;
}

bool SubdiamondRef::contains(const DiamondAddress& v) const {
  if (v.is_inner()) {
    const auto& r = v.refinements();
    if (r.size() >= path.size() && std::equal(path.begin(), path.end(), r.begin())) return true;
  }
  return v == bottom() || v == top();
}

void validate_subdiamond(const SubdiamondRef& s, const DiamondParams& params) {
  if (s.path.size() > params.level) {
    throw Error(ErrorKind::InvalidAddress, "subdiamond path longer than m = " + std::to_string(params.level));
  }
  for (const auto& step : s.path) check_branch(step.branch, params, "subdiamond");
}

std::vector<SubdiamondRef> subdiamonds_at_level(unsigned level, const DiamondParams& params,
                                                const SubdiamondRef& within) {
  require_finite(params, "subdiamonds_at_level");
  validate_subdiamond(within, params);
  const unsigned outer = within.level(params);
  if (level > outer) {
    throw Error(ErrorKind::OutOfRange, "level " + std::to_string(level) + " exceeds enclosing level " +
                                           std::to_string(outer));
  }
  std::vector<SubdiamondRef> out;
  RefinementPath prefix = within.path;
  extend_paths(prefix, params.level - level, params.branching.value(), out);
  return out;
}

BottomNeighbors::BottomNeighbors(const DiamondParams& params, std::optional<std::uint64_t> branch_cap)
    : level_(params.level), cap_(0) {
  if (params.branching.is_finite()) {
    cap_ = params.branching.value();
    if (branch_cap) {
      if (*branch_cap > cap_) {
        throw Error(ErrorKind::Precondition, "branch cap exceeds k");
      }
      cap_ = *branch_cap;
    }
  } else {
    if (!branch_cap) {
      throw Error(ErrorKind::Precondition, "unbounded branching requires an explicit branch cap");
    }
    cap_ = *branch_cap;
  }
  if (cap_ == 0) throw Error(ErrorKind::Precondition, "branch cap must be positive");
}

std::uint64_t BottomNeighbors::size() const noexcept {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < level_; ++i) {
    if (!mul_checked(n, cap_, n)) return UINT64_MAX;
  }
  return n;
}

BottomNeighbors::iterator::iterator(unsigned level, std::uint64_t cap, bool done)
    : level_(level), cap_(cap), digits_(done ? 0 : level, 1), done_(done) {}

DiamondAddress BottomNeighbors::iterator::operator*() const {
  if (level_ == 0) return DiamondAddress::top();
  RefinementPath path;
  path.reserve(level_ - 1);
  for (unsigned i = 0; i + 1 < level_; ++i) path.push_back({digits_[i], Half::Lower});
  return DiamondAddress::inner(std::move(path), digits_.back());
}

BottomNeighbors::iterator& BottomNeighbors::iterator::operator++() {
  for (std::size_t i = digits_.size(); i-- > 0;) {
    if (digits_[i] < cap_) {
      ++digits_[i];
      return *this;
    }
    digits_[i] = 1;
  }
  done_ = true;
  digits_.clear();
  return *this;
}

std::vector<DiamondAddress> bottom_neighbors(const DiamondParams& params, std::optional<std::uint64_t> branch_cap) {
  BottomNeighbors range(params, branch_cap);
  return {range.begin(), range.end()};
}

std::string to_string(const DiamondAddress& v) {
  switch (v.kind()) {
    case DiamondAddress::Kind::Bottom: return "B";
    case DiamondAddress::Kind::Top: return "T";
    case DiamondAddress::Kind::Inner: break;
  }
  return "I:" + steps_to_string(v.refinements()) + ":" + std::to_string(v.middle_branch());
}

DiamondAddress parse_diamond_address(std::string_view text) {
  if (text == "B") return DiamondAddress::bottom();
  if (text == "T") return DiamondAddress::top();
  if (text.size() < 4 || text.substr(0, 2) != "I:") {
    throw Error(ErrorKind::Parse, "diamond address must be B, T or I:<steps>:<mb>, got '" + std::string(text) + "'");
  }
  std::string_view rest = text.substr(2);
  const auto colon = rest.rfind(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::Parse, "missing middle branch in '" + std::string(text) + "'");
  }
  RefinementPath path = parse_steps(rest.substr(0, colon), text);
  std::uint64_t mb = parse_uint(rest.substr(colon + 1), text);
  if (mb == 0) throw Error(ErrorKind::Parse, "middle branch must be positive in '" + std::string(text) + "'");
  return DiamondAddress::inner(std::move(path), mb);
}

std::string to_string(const SubdiamondRef& s) { return s.path.empty() ? "*" : steps_to_string(s.path); }

SubdiamondRef parse_subdiamond(std::string_view text) {
  if (text.empty() || text == "*") return SubdiamondRef::whole();
  return SubdiamondRef{parse_steps(text, text)};
}

}  // namespace treediam
