#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "treediam/rational.hpp"

namespace treediam {

// Truth values of the three inequalities on (n, k, p, alpha, r, d). The
// relative form is stated in e = d - p; the absolute form keeps the 2^p
// factors. The two forms are equivalent, so they must agree.
struct WitnessChecks {
  bool separation = false;  // 2^e > 2 alpha (r+1)      | 2^(d-1) > alpha 2^p (r+1)
  bool packing = false;     // (2^e)^log2(2k) < 2^r     | (2k)^(d-p) < 2^r
  bool depth = false;       // 2^e < n - r              | 2^d < 2^p (n-r)

  bool all() const noexcept { return separation && packing && depth; }
  friend bool operator==(const WitnessChecks&, const WitnessChecks&) = default;
};

struct WitnessParams {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  unsigned p = 0;
  Rational alpha;
  std::uint64_t r = 0;
  std::uint64_t d = 0;  // p + e with e the largest integer such that 2^e < n - r
  WitnessChecks relative;
  WitnessChecks absolute;
  // True when r came from exact integer powers, false when from a
  // high-precision bracket.
  bool r_exact = true;

  bool feasible() const noexcept { return relative.all(); }
  bool consistent() const noexcept { return relative == absolute; }
};

inline constexpr unsigned kMaxWitnessScale = 4096;

// ceil(log2(2k) * log2(n)). Exact via integer powers when n or 2k is a
// power of two; otherwise bracketed with 100-digit arithmetic, throwing
// Precondition if the bracket cannot separate the value from an integer.
std::uint64_t witness_r(std::uint64_t n, std::uint64_t k, bool* exact = nullptr);

// nullopt when n - r < 2. Throws Precondition for n < 2, k < 2, alpha <= 0
// or p > kMaxWitnessScale.
std::optional<WitnessParams> witness_params(std::uint64_t n, std::uint64_t k, unsigned p, const Rational& alpha);

enum class AlphaSchedule {
  NOverLog2Squared,  // n / (log2 n)^2, n a power of two
  NOverThree,        // n / 3
};

// Throws Precondition when the schedule needs a power of two and n is not.
Rational schedule_alpha(AlphaSchedule schedule, std::uint64_t n);
std::string_view to_string(AlphaSchedule schedule);
// "n-over-log2sq" or "n-over-3". Throws Parse.
AlphaSchedule parse_alpha_schedule(std::string_view text);

}  // namespace treediam
