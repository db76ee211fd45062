#pragma once

#include "algsearch/scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace algsearch {

// C(n, k) exactly; zero when k > n.
inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

// sum_{j=0}^{d} C(n, j)
inline BigInt binomial_prefix_sum(std::size_t n, std::size_t d) {
  BigInt total = 0;
  for (std::size_t j = 0; j <= d && j <= n; ++j) total += binomial(n, j);
  return total;
}

template <Scalar S>
S to_scalar(const BigInt& x) {
  if constexpr (is_exact_v<S>) {
    return Rational(x);
  } else {
    return x.convert_to<double>();
  }
}

}  // namespace algsearch
