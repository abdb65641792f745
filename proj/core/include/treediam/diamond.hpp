#pragma once

#include <compare>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treediam {

// Number of parallel length-2 paths substituted for each edge per round.
// Zero encodes unbounded branching; branch indices are then any positive integer.
class Branching {
 public:
  constexpr Branching() = default;
  constexpr explicit Branching(std::uint64_t k) : k_(k) {}

  static constexpr Branching unbounded() { return Branching(); }

  constexpr bool is_unbounded() const noexcept { return k_ == 0; }
  constexpr bool is_finite() const noexcept { return k_ != 0; }
  // Only meaningful for finite branching.
  constexpr std::uint64_t value() const noexcept { return k_; }

  friend constexpr bool operator==(Branching, Branching) = default;

 private:
  std::uint64_t k_ = 0;
};

// Highest level for which 2^m fits a 64-bit distance comfortably.
inline constexpr unsigned kMaxDiamondLevel = 62;

// Default cap on materialized vertices.
inline constexpr std::uint64_t kDefaultVertexBudget = 200'000;

struct DiamondParams {
  unsigned level = 0;  // m
  Branching branching{2};

  // (2k)^m and 2 + k((2k)^m - 1)/(2k - 1); nullopt on overflow or unbounded k.
  std::optional<std::uint64_t> edge_count() const noexcept;
  std::optional<std::uint64_t> vertex_count() const noexcept;

  // Throws Precondition for k < 2 or level above kMaxDiamondLevel.
  void validate() const;

  friend bool operator==(const DiamondParams&, const DiamondParams&) = default;
};

enum class Half : std::uint8_t { Lower, Upper };

// One refinement step: edge `path` of D_t was replaced by k chains and we
// follow chain `branch` into its lower (bottom-side) or upper (top-side) edge.
struct Refinement {
  std::uint64_t branch = 1;
  Half half = Half::Lower;

  friend auto operator<=>(const Refinement&, const Refinement&) = default;
  friend bool operator==(const Refinement&, const Refinement&) = default;
};

using RefinementPath = std::vector<Refinement>;

// Canonical vertex identifier. An inner vertex is the middle vertex on chain
// `middle_branch` created when the edge named by `refinements` was refined,
// so it appears at creation step |refinements| + 1.
class DiamondAddress {
 public:
  enum class Kind : std::uint8_t { Bottom, Top, Inner };

  DiamondAddress() = default;

  static DiamondAddress bottom() { return DiamondAddress(Kind::Bottom, {}, 0); }
  static DiamondAddress top() { return DiamondAddress(Kind::Top, {}, 0); }
  static DiamondAddress inner(RefinementPath refinements, std::uint64_t middle_branch) {
    return DiamondAddress(Kind::Inner, std::move(refinements), middle_branch);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_inner() const noexcept { return kind_ == Kind::Inner; }
  bool is_bottom() const noexcept { return kind_ == Kind::Bottom; }
  bool is_top() const noexcept { return kind_ == Kind::Top; }

  const RefinementPath& refinements() const noexcept { return refinements_; }
  std::uint64_t middle_branch() const noexcept { return middle_; }

  // Forward numbering (1 = first construction step). Inner addresses only.
  unsigned creation_step() const noexcept { return static_cast<unsigned>(refinements_.size()) + 1; }

  // Order: Bottom, Top, then inner addresses lexicographically by
  // (refinements, middle branch).
  friend auto operator<=>(const DiamondAddress&, const DiamondAddress&) = default;
  friend bool operator==(const DiamondAddress&, const DiamondAddress&) = default;

 private:
  DiamondAddress(Kind kind, RefinementPath refinements, std::uint64_t middle)
      : kind_(kind), refinements_(std::move(refinements)), middle_(middle) {}

  Kind kind_ = Kind::Bottom;
  RefinementPath refinements_;
  std::uint64_t middle_ = 0;
};

// Throws InvalidAddress when `v` cannot be a vertex of D_{m,k}.
void validate_address(const DiamondAddress& v, const DiamondParams& params);
bool is_valid_address(const DiamondAddress& v, const DiamondParams& params) noexcept;

// Counted backwards: m - s + 1 for a vertex created at step s. nullopt for
// Top and Bottom.
std::optional<unsigned> generation_number(const DiamondAddress& v, const DiamondParams& params);

// Z_d in lexicographic order. Requires finite branching and 1 <= d <= m.
std::vector<DiamondAddress> generation_members(unsigned d, const DiamondParams& params);

// A subdiamond of D_{m,k}: the subgraph grown from the edge named by `path`.
// Its level is m - |path| and its top-bottom distance is 2^level.
struct SubdiamondRef {
  RefinementPath path;

  static SubdiamondRef whole() { return {}; }

  unsigned level(const DiamondParams& params) const noexcept {
    return params.level - static_cast<unsigned>(path.size());
  }
  DiamondAddress bottom() const;
  DiamondAddress top() const;
  // The middle vertex on chain `branch` of this subdiamond (level >= 1).
  DiamondAddress middle(std::uint64_t branch) const { return DiamondAddress::inner(path, branch); }
  SubdiamondRef child(std::uint64_t branch, Half half) const;

  // True for the two endpoints and for every inner vertex created inside.
  bool contains(const DiamondAddress& v) const;

  friend auto operator<=>(const SubdiamondRef&, const SubdiamondRef&) = default;
  friend bool operator==(const SubdiamondRef&, const SubdiamondRef&) = default;
};

void validate_subdiamond(const SubdiamondRef& s, const DiamondParams& params);

// Every subdiamond of the given level, in lexicographic path order.
// With `within`, only those nested inside it. Finite branching only.
std::vector<SubdiamondRef> subdiamonds_at_level(unsigned level, const DiamondParams& params,
                                                const SubdiamondRef& within = SubdiamondRef::whole());

// The vertices adjacent to Bottom: generation-1 addresses whose refinements
// are all Lower halves (for m = 0 the single neighbour is Top). Iterated
// lazily in lexicographic order; for unbounded branching `branch_cap` bounds
// the branch indices used.
class BottomNeighbors {
 public:
  class iterator {
   public:
    using value_type = DiamondAddress;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;

    DiamondAddress operator*() const;
    iterator& operator++();
    iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_ && (a.done_ || a.digits_ == b.digits_); }

   private:
    friend class BottomNeighbors;
    iterator(unsigned level, std::uint64_t cap, bool done);

    unsigned level_ = 0;
    std::uint64_t cap_ = 0;
    std::vector<std::uint64_t> digits_;  // branch indices, last one is the middle
    bool done_ = true;
  };

  BottomNeighbors(const DiamondParams& params, std::optional<std::uint64_t> branch_cap = std::nullopt);

  iterator begin() const { return iterator(level_, cap_, false); }
  iterator end() const { return iterator(level_, cap_, true); }
  // cap^m, saturating.
  std::uint64_t size() const noexcept;

 private:
  unsigned level_;
  std::uint64_t cap_;
};

std::vector<DiamondAddress> bottom_neighbors(const DiamondParams& params,
                                             std::optional<std::uint64_t> branch_cap = std::nullopt);

// Text form: B | T | I:<b><h>(.<b><h>)*:<mb>, h in {L,U}; I::<mb> for the
// first construction step.
std::string to_string(const DiamondAddress& v);
DiamondAddress parse_diamond_address(std::string_view text);

std::string to_string(const SubdiamondRef& s);
// Accepts "" or "*" for the whole graph, otherwise <b><h>(.<b><h>)*.
SubdiamondRef parse_subdiamond(std::string_view text);

}  // namespace treediam
