#pragma once

#include <cstdint>

#include "cachelab/rational.hpp"

namespace cachelab {

// Binomial coefficient with the zero convention: 0 whenever n < 0, k < 0 or
// n < k. Exact for every argument whose result fits in 63 bits.
std::int64_t binomial(std::int64_t n, std::int64_t k);

BigInt big_binomial(std::int64_t n, std::int64_t k);

BigInt factorial(std::int64_t n);

BigInt power(std::int64_t base, std::int64_t exponent);

}  // namespace cachelab
