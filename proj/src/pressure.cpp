#include "intricacy/pressure.hpp"

#include <cmath>

#include "intricacy/detail/average.hpp"
#include "intricacy/detail/paths.hpp"
#include "intricacy/error.hpp"
#include "intricacy/perron.hpp"

namespace intricacy {

namespace {

std::vector<double> exp_weights(const Sft& sft, const Potential& f) {
  if (static_cast<int>(f.values.size()) != sft.alphabet_size())
    throw InputError("potential covers " + std::to_string(f.values.size()) +
                     " symbols, shift has " + std::to_string(sft.alphabet_size()));
  std::vector<double> w;
  w.reserve(f.values.size());
  for (double v : f.values) {
    if (!std::isfinite(v)) throw InputError("potential values must be finite");
    w.push_back(std::exp(v));
  }
  return w;
}

}  // namespace

Potential Potential::from_map(const std::map<int, double>& values, int alphabet_size) {
  Potential f;
  f.values.resize(alphabet_size);
  for (int a = 0; a < alphabet_size; ++a) {
    const auto it = values.find(a);
    if (it == values.end()) throw InputError("potential has no value for symbol " + std::to_string(a));
    f.values[a] = it->second;
  }
  for (const auto& [symbol, v] : values) {
    if (symbol < 0 || symbol >= alphabet_size)
      throw InputError("potential names symbol " + std::to_string(symbol) + " outside the alphabet");
  }
  return f;
}

double weighted_count(const Sft& sft, const Potential& f, const SubsetSpec& subset) {
  const auto e = subset.elements();
  return detail::word_sum<double>(sft, std::span<const int>(e), exp_weights(sft, f));
}

double asp_profile(const Sft& sft, const Potential& f, const CoefficientSystem& coeffs, int n,
                   int threads, int max_n) {
  if (n < 1) throw InputError("n must be >= 1");
  if (n > max_n) throw CapExceeded("n=" + std::to_string(n) + " exceeds the enumeration cap");
  const auto totals = detail::subset_totals<double>(sft, n, 1, exp_weights(sft, f), threads);
  return detail::log_average(totals, coeffs, n);
}

double classical_pressure(const Sft& sft, const Potential& f) {
  const auto w = detail::state_weights(sft, exp_weights(sft, f));
  Eigen::MatrixXd m = sft.adjacency().cast<double>();
  for (int j = 0; j < sft.state_count(); ++j) m.col(j) *= w[j];
  const auto result = perron_root(m);
  if (!result.converged) {
    warn("power iteration for pressure did not converge; estimating from weighted word growth");
    Eigen::VectorXd v = Eigen::VectorXd::Ones(m.rows());
    double log_total = 0.0;
    for (int i = 0; i < 4000; ++i) {
      v = m.transpose() * v;
      const double s = v.sum();
      if (i >= 2000) log_total += std::log(s);
      v /= s;
    }
    return log_total / 2000;
  }
  return std::log(result.root);
}

}  // namespace intricacy
