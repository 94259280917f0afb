#include "cachelab/combinatorics.hpp"

#include <stdexcept>

namespace cachelab {

BigInt big_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || n < k) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  const BigInt value = big_binomial(n, k);
  if (value > std::numeric_limits<std::int64_t>::max()) {
    throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return value.convert_to<std::int64_t>();
}

BigInt factorial(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  BigInt result = 1;
  for (std::int64_t i = 2; i <= n; ++i) result *= i;
  return result;
}

BigInt power(std::int64_t base, std::int64_t exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  BigInt result = 1;
  for (std::int64_t i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace cachelab
