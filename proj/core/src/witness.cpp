#include "treediam/witness.hpp"

#include <bit>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "treediam/error.hpp"

namespace treediam {

namespace {

namespace mp = boost::multiprecision;

mp::cpp_int pow2(std::uint64_t e) { return mp::cpp_int(1) << static_cast<unsigned>(e); }

mp::cpp_int ipow(std::uint64_t base, std::uint64_t e) { return mp::pow(mp::cpp_int(base), static_cast<unsigned>(e)); }

// ceil(log2(x)) for x >= 1.
std::uint64_t ceil_log2(const mp::cpp_int& x) {
  const auto msb = static_cast<std::uint64_t>(mp::msb(x));
  return x == pow2(msb) ? msb : msb + 1;
}

bool is_pow2(std::uint64_t x) { return std::has_single_bit(x); }

mp::cpp_rational to_mp(const Rational& r) { return mp::cpp_rational(r.numerator(), r.denominator()); }

// 2^e for a possibly negative exponent.
mp::cpp_rational pow2_signed(std::int64_t e) {
  if (e >= 0) return mp::cpp_rational(pow2(static_cast<std::uint64_t>(e)));
  return mp::cpp_rational(mp::cpp_int(1), pow2(static_cast<std::uint64_t>(-e)));
}

}  // namespace

std::uint64_t witness_r(std::uint64_t n, std::uint64_t k, bool* exact) {
  if (n < 2 || k < 2) throw Error(ErrorKind::Precondition, "need n >= 2 and k >= 2");
  if (exact) *exact = true;
  if (is_pow2(n)) return ceil_log2(ipow(2 * k, static_cast<std::uint64_t>(std::countr_zero(n))));
  if (is_pow2(2 * k)) return ceil_log2(ipow(n, static_cast<std::uint64_t>(std::countr_zero(2 * k))));

  using Float = mp::cpp_bin_float_100;
  const Float ln2 = mp::log(Float(2));
  const Float x = mp::log(Float(2 * k)) / ln2 * (mp::log(Float(n)) / ln2);
  const Float c = mp::ceil(x);
  if (c - x < Float("1e-60") || x - (c - 1) < Float("1e-60")) {
    throw Error(ErrorKind::Precondition, "cannot separate log2(2k) log2(n) from an integer for n = " +
                                             std::to_string(n) + ", k = " + std::to_string(k));
  }
  if (exact) *exact = false;
  return c.convert_to<std::uint64_t>();
}

std::optional<WitnessParams> witness_params(std::uint64_t n, std::uint64_t k, unsigned p, const Rational& alpha) {
  if (alpha <= 0) throw Error(ErrorKind::Precondition, "alpha must be positive");
  if (p > kMaxWitnessScale) {
    throw Error(ErrorKind::Precondition, "p above " + std::to_string(kMaxWitnessScale));
  }
  WitnessParams w;
  w.n = n;
  w.k = k;
  w.p = p;
  w.alpha = alpha;
  w.r = witness_r(n, k, &w.r_exact);
  if (w.r >= n || n - w.r < 2) return std::nullopt;

  const std::uint64_t room = n - w.r;
  const auto e = static_cast<std::uint64_t>(std::bit_width(room - 1) - 1);
  w.d = p + e;

  const mp::cpp_rational a = to_mp(alpha);
  const mp::cpp_int two_e = pow2(e);
  const mp::cpp_int two_p = pow2(p);
  const mp::cpp_int packed = ipow(2 * k, e);

  w.relative.separation = mp::cpp_rational(two_e) > 2 * a * (w.r + 1);
  w.relative.packing = packed < pow2(w.r);
  w.relative.depth = two_e < room;

  const auto d = static_cast<std::int64_t>(w.d);
  w.absolute.separation = pow2_signed(d - 1) > a * mp::cpp_rational(two_p) * (w.r + 1);
  w.absolute.packing = ipow(2 * k, w.d - p) < pow2(w.r);
  w.absolute.depth = pow2(w.d) < two_p * room;
  return w;
}

Rational schedule_alpha(AlphaSchedule schedule, std::uint64_t n) {
  if (n < 2) throw Error(ErrorKind::Precondition, "n must be at least 2");
  if (n > (std::uint64_t{1} << 62)) throw Error(ErrorKind::Precondition, "n above 2^62");
  const auto sn = static_cast<std::int64_t>(n);
  switch (schedule) {
    case AlphaSchedule::NOverThree:
      return Rational(sn, 3);
    case AlphaSchedule::NOverLog2Squared: {
      if (!is_pow2(n)) {
        throw Error(ErrorKind::Precondition, "n / (log2 n)^2 needs n to be a power of two, got " + std::to_string(n));
      }
      const std::int64_t t = std::countr_zero(n);
      return Rational(sn, t * t);
    }
  }
  throw Error(ErrorKind::Precondition, "unknown alpha schedule");
}

std::string_view to_string(AlphaSchedule schedule) {
  switch (schedule) {
    case AlphaSchedule::NOverLog2Squared:
      return "n-over-log2sq";
    case AlphaSchedule::NOverThree:
      return "n-over-3";
  }
  return "?";
}

AlphaSchedule parse_alpha_schedule(std::string_view text) {
  if (text == "n-over-log2sq") return AlphaSchedule::NOverLog2Squared;
  if (text == "n-over-3") return AlphaSchedule::NOverThree;
  throw Error(ErrorKind::Parse, "unknown alpha schedule '" + std::string(text) + "'");
}

}  // namespace treediam
