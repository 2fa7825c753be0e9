#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "intricacy/coeffs.hpp"
#include "intricacy/numeric.hpp"

namespace intricacy::detail {

/// Σ_S c(n,|S|) g(S) over all masks of n*, pairwise summed in mask order.
template <typename Term>
double coefficient_sum(const CoefficientSystem& coeffs, int n, const Term& g) {
  std::vector<double> w(n + 1);
  for (int k = 0; k <= n; ++k) w[k] = coeffs.weight(n, k);
  const std::size_t count = std::size_t{1} << n;
  return pairwise_sum(0, count, [&](std::size_t m) {
    const double c = w[std::popcount(static_cast<std::uint64_t>(m))];
    return c == 0.0 ? 0.0 : c * g(m);
  });
}

/// (1/n) Σ_S c_S^n log totals[S].
inline double log_average(const std::vector<double>& totals, const CoefficientSystem& coeffs,
                          int n) {
  return coefficient_sum(coeffs, n, [&](std::size_t m) { return std::log(totals[m]); }) / n;
}

}  // namespace intricacy::detail
