#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace treediam {

// Exact ratios of graph distances. Always kept in lowest terms by boost.
using Rational = boost::rational<std::int64_t>;

// "p/q" in lowest terms; integers keep the "/1".
std::string to_string(const Rational& r);
// Accepts "p/q" or "p". Throws Error(Parse).
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace treediam
