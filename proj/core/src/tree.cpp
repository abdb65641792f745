#include "treediam/tree.hpp"

#include "treediam/error.hpp"

namespace treediam {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidAddress: return "invalid-address";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::UnboundedNotMaterializable: return "unbounded-branching-not-materializable";
    case ErrorKind::VertexNotInSubdiamond: return "vertex-not-in-subdiamond";
    case ErrorKind::VertexNotInGraph: return "vertex-not-in-graph";
    case ErrorKind::NonInjectiveMap: return "non-injective-map";
    case ErrorKind::TrivialSource: return "trivial-source";
    case ErrorKind::TargetTooLarge: return "target-too-large";
    case ErrorKind::NoIncumbent: return "budget-exceeded-without-incumbent";
    case ErrorKind::EmptyRegion: return "empty-region";
    case ErrorKind::NoGeneration: return "no-generation";
    case ErrorKind::Precondition: return "precondition-violated";
  }
  return "unknown";
}

TreeVertex TreeVertex::from_bits(std::string_view bits) {
  if (bits.size() > kMaxTreeDepth) {
    throw Error(ErrorKind::OutOfRange, "tree vertex longer than " + std::to_string(kMaxTreeDepth));
  }
  std::uint64_t packed = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(ErrorKind::Parse, "tree vertex must be a 0/1 string, got '" + std::string(bits) + "'");
    }
    packed = (packed << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return TreeVertex(static_cast<unsigned>(bits.size()), packed);
}

TreeVertex TreeVertex::child(bool bit) const {
  if (length_ >= kMaxTreeDepth) {
    throw Error(ErrorKind::OutOfRange, "tree vertex depth limit reached");
  }
  return TreeVertex(length_ + 1, (bits_ << 1) | static_cast<std::uint64_t>(bit));
}

TreeVertex TreeVertex::parent() const {
  if (is_root()) {
    throw Error(ErrorKind::Precondition, "the root has no parent");
  }
  return TreeVertex(length_ - 1, bits_ >> 1);
}

std::vector<TreeVertex> enumerate_tree(TreeSpec spec) {
  if (spec.depth > kMaxTreeDepth) {
    throw Error(ErrorKind::OutOfRange, "tree depth exceeds " + std::to_string(kMaxTreeDepth));
  }
  std::vector<TreeVertex> out;
  out.reserve(spec.vertex_count());
  out.push_back(TreeVertex::root());
  // Breadth-first from the root yields length-lex order directly.
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].length() == spec.depth) break;
    out.push_back(out[i].child(false));
    out.push_back(out[i].child(true));
  }
  return out;
}

std::string to_string(const TreeVertex& v) {
  if (v.is_root()) return "()";
  std::string s(v.length(), '0');
  for (unsigned i = 0; i < v.length(); ++i) {
    if (v.bit(i)) s[i] = '1';
  }
  return s;
}

TreeVertex parse_tree_vertex(std::string_view text) {
  if (text == "()" || text.empty()) return TreeVertex::root();
  return TreeVertex::from_bits(text);
}

}  // namespace treediam
