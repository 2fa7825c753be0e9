#include "intricacy/topo.hpp"

#include <algorithm>
#include <cmath>

#include "intricacy/detail/average.hpp"
#include "intricacy/detail/paths.hpp"
#include "intricacy/error.hpp"

namespace intricacy {

namespace {

int window(const ProfileOptions& options) {
  if (options.block_k < 0) throw InputError("block_k must be >= 0");
  return std::max(1, options.block_k);
}

void check_horizon(int n, const ProfileOptions& options) {
  if (n < 1) throw InputError("n must be >= 1");
  if (n > options.max_n)
    throw CapExceeded("n=" + std::to_string(n) + " exceeds the enumeration cap " +
                      std::to_string(options.max_n));
  if (n + window(options) - 1 > SubsetSpec::kMaxHorizon)
    throw CapExceeded("n + block_k exceeds the subset horizon");
}

std::vector<double> count_totals(const Sft& sft, int n, const ProfileOptions& options) {
  check_horizon(n, options);
  const std::vector<u128> ones(sft.alphabet_size(), 1);
  return detail::subset_totals<u128>(sft, n, window(options), ones, options.threads);
}

}  // namespace

ComplexityProfile finite_profile(const Sft& sft, const CoefficientSystem& coeffs, int n,
                                 const ProfileOptions& options) {
  const auto totals = count_totals(sft, n, options);
  const std::size_t full = SubsetSpec::full_mask(n);
  const double log_full = std::log(totals[full]);

  ComplexityProfile out;
  out.n = n;
  out.block_k = options.block_k;
  out.coeffs_spec = coeffs.spec();
  out.entropy_n = log_full / n;
  out.asc = detail::log_average(totals, coeffs, n);
  out.intricacy = detail::coefficient_sum(coeffs, n, [&](std::size_t m) {
                    return std::log(totals[m]) + std::log(totals[full ^ m]) - log_full;
                  }) / n;
  out.acc = detail::coefficient_sum(coeffs, n, [&](std::size_t m) {
              return (m & 1U) ? std::log(totals[m]) : 0.0;
            }) / n;
  if (coeffs.is_uniform()) out.alt = std::ldexp(pairwise_sum(totals), -n);
  return out;
}

double weighted_log_count(const Sft& sft, const CoefficientSystem& coeffs, int n,
                          Enumeration method, const ProfileOptions& options) {
  if (method == Enumeration::full) {
    const auto totals = count_totals(sft, n, options);
    return detail::log_average(totals, coeffs, n) * n;
  }
  check_horizon(n, options);
  const int width = window(options);
  // Sets containing 0 are the odd masks; T with max element t has n - t
  // translates inside n*.
  const std::size_t half = std::size_t{1} << (n - 1);
  std::vector<double> terms(half, 0.0);
  parallel_for((half + 1023) / 1024, options.threads, [&](std::size_t task) {
    const std::size_t end = std::min(half, (task + 1) * 1024);
    for (std::size_t i = task * 1024; i < end; ++i) {
      const std::uint64_t mask = (static_cast<std::uint64_t>(i) << 1) | 1U;
      const SubsetSpec s(n, mask);
      const int top = 63 - std::countl_zero(mask);
      const double count = to_double(count_words_at(sft, s.thickened(width)));
      terms[i] = (n - top) * coeffs.weight(n, s.size()) * std::log(count);
    }
  });
  return pairwise_sum(terms);
}

double alternate_complexity(const Sft& sft, int n, const ProfileOptions& options) {
  const auto totals = count_totals(sft, n, options);
  return std::ldexp(pairwise_sum(totals), -n);
}

std::vector<double> log_language_sizes(const Sft& sft, int K) {
  if (K < 1) throw InputError("need at least one term");
  std::vector<double> out;
  out.reserve(K);
  if (!sft.symbols_injective()) {
    for (int k = 1; k <= K; ++k) out.push_back(std::log(to_double(complexity_count(sft, k))));
    return out;
  }
  const Eigen::MatrixXd m = sft.adjacency().cast<double>();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m.rows());
  double log_scale = 0.0;
  for (int k = 1; k <= K; ++k) {
    if (k > 1) v = m.transpose() * v;
    const double s = v.sum();
    out.push_back(log_scale + std::log(s));
    v /= s;
    log_scale += std::log(s);
  }
  return out;
}

SeriesValue asc_series(const Sft& sft, int terms) {
  if (!sft.square_positive())
    throw InputError("series formula needs an adjacency matrix whose square is positive");
  const auto lambda = log_language_sizes(sft, terms);
  SeriesValue out;
  out.terms = terms;
  double s = 0.0;
  for (int k = 1; k <= terms; ++k) s += std::ldexp(lambda[k - 1], -k);
  out.value = 0.25 * s;
  // log|L_k| <= k log r, and Σ_{k>K} k/2^k = (K+2)/2^K
  out.tail_bound = 0.25 * std::log(static_cast<double>(sft.alphabet_size())) * (terms + 2) *
                   std::ldexp(1.0, -terms);
  return out;
}

SeriesValue int_series(const Sft& sft, int terms) {
  SeriesValue out = asc_series(sft, terms);
  out.value = 2.0 * out.value - topological_entropy(sft);
  out.tail_bound *= 2.0;
  return out;
}

bool RecursionReport::passed() const {
  return std::all_of(rows.begin(), rows.end(),
                     [&](const RecursionRow& r) { return r.relative_error <= tolerance; });
}

RecursionReport recursion_check(const Sft& sft, int n, int threads) {
  if (!sft.square_positive())
    throw InputError("recursion identity needs an adjacency matrix whose square is positive");
  if (n < 1 || n > 20) throw CapExceeded("recursion_check supports 1 <= n <= 20");
  const auto lambda = log_language_sizes(sft, n);
  RecursionReport report;
  double previous = 0.0;
  ProfileOptions options;
  options.threads = threads;
  for (int m = 1; m <= n; ++m) {
    const auto totals = count_totals(sft, m, options);
    RecursionRow row;
    row.n = m;
    row.direct = pairwise_sum(0, totals.size(), [&](std::size_t s) { return std::log(totals[s]); });
    if (m == 1) {
      row.recursive = lambda[0];
    } else {
      double tail = 0.0;
      for (int k = 1; k <= m - 2; ++k) tail += std::ldexp(lambda[k - 1], -k);
      row.recursive = lambda[m - 1] + 2.0 * previous + std::ldexp(tail, m - 2);
    }
    row.relative_error = std::abs(row.direct - row.recursive) / std::max(1.0, std::abs(row.direct));
    previous = row.recursive;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace intricacy
