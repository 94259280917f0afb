#include "cachelab/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "cachelab/error.hpp"

namespace cachelab {

CapExceeded::CapExceeded(std::string what_enumeration, std::uint64_t required,
                         std::uint64_t cap)
    : std::runtime_error(what_enumeration + " requires " + std::to_string(required) +
                         " items, cap is " + std::to_string(cap)),
      required_(required),
      cap_(cap) {}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view body = trim(text);
  const auto slash = body.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(body, text));
  const BigInt num = parse_integer(trim(body.substr(0, slash)), text);
  const BigInt den = parse_integer(trim(body.substr(slash + 1)), text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace cachelab
