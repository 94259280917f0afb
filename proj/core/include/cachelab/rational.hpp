#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cachelab {

// Exact arithmetic for every size, load and bound in the library.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

// "p/q" in lowest terms; integers render without the "/1".
std::string to_string(const Rational& value);

// Accepts "p", "p/q" and "-p/q" with optional surrounding whitespace.
// Throws std::invalid_argument on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

// Comparisons on the reduced numerator/denominator pair. Boost orders
// rationals through repeated division, which dominates tight loops.
inline bool same_value(const Rational& a, const Rational& b) {
  return numerator(a) == numerator(b) && denominator(a) == denominator(b);
}

inline bool less_than(const Rational& a, const Rational& b) {
  if (denominator(a) == denominator(b)) return numerator(a) < numerator(b);
  return numerator(a) * denominator(b) < numerator(b) * denominator(a);
}

}  // namespace cachelab
