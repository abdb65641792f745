#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace treediam {

// Largest depth whose vertices fit the packed representation below.
inline constexpr unsigned kMaxTreeDepth = 62;

// A vertex of the binary tree T_n: a 0/1 sequence of length <= n.
// Bits are packed so that the first bit of the sequence is the most
// significant of the low `length` bits; the empty sequence is the root.
class TreeVertex {
 public:
  TreeVertex() = default;

  static TreeVertex root() { return {}; }
  static TreeVertex from_bits(std::string_view bits);

  unsigned length() const noexcept { return length_; }
  std::uint64_t packed() const noexcept { return bits_; }
  bool is_root() const noexcept { return length_ == 0; }

  // i-th bit of the sequence, counted from the left.
  bool bit(unsigned i) const noexcept { return (bits_ >> (length_ - 1 - i)) & 1U; }

  TreeVertex child(bool bit) const;
  TreeVertex parent() const;

  // Length-lexicographic order: shorter sequences first, then lexicographic.
  friend auto operator<=>(const TreeVertex&, const TreeVertex&) = default;
  friend bool operator==(const TreeVertex&, const TreeVertex&) = default;

 private:
  TreeVertex(unsigned length, std::uint64_t bits) : length_(length), bits_(bits) {}

  unsigned length_ = 0;
  std::uint64_t bits_ = 0;
};

struct TreeSpec {
  unsigned depth = 0;

  std::uint64_t vertex_count() const noexcept { return (std::uint64_t{2} << depth) - 1; }
  bool contains(const TreeVertex& v) const noexcept { return v.length() <= depth; }
  friend bool operator==(const TreeSpec&, const TreeSpec&) = default;
};

// All vertices of T_n in length-lexicographic order (root first).
std::vector<TreeVertex> enumerate_tree(TreeSpec spec);

// Text form: the bit string, with the root written as "()".
std::string to_string(const TreeVertex& v);
TreeVertex parse_tree_vertex(std::string_view text);

}  // namespace treediam
