#include "intricacy/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

#include "intricacy/error.hpp"

namespace intricacy::oracle {

namespace {

/// μ[w] for |w| >= k: stationary weight of the first block times the
/// transitions between the blocks ending at each later place.
double word_measure(const MarkovMeasure& m, const std::vector<int>& w,
                    const std::map<std::string, int>& index) {
  const int k = m.block_len();
  std::string block;
  for (int i = 0; i < k; ++i) block += static_cast<char>('0' + w[i]);
  auto it = index.find(block);
  if (it == index.end()) return 0.0;
  double mu = m.p()(it->second);
  int state = it->second;
  for (std::size_t t = k; t < w.size() && mu > 0.0; ++t) {
    block = block.substr(1) + static_cast<char>('0' + w[t]);
    it = index.find(block);
    if (it == index.end()) return 0.0;
    mu *= m.P()(state, it->second);
    state = it->second;
  }
  return mu;
}

}  // namespace

double joint_entropy(const MarkovMeasure& m, const SubsetSpec& subset, double cap) {
  if (subset.empty()) return 0.0;
  const auto places = subset.elements();
  const int length = std::max(places.back() + 1, m.block_len());
  const int r = m.alphabet_size();
  if (std::pow(static_cast<double>(r), length) > cap) throw CapExceeded("oracle enumeration exceeds the cap");
  std::map<std::string, int> index;
  for (int i = 0; i < m.state_count(); ++i) index[m.states()[i]] = i;

  std::map<std::vector<int>, double> projected;
  std::vector<int> w(length, 0);
  while (true) {
    const double mu = word_measure(m, w, index);
    if (mu > 0.0) {
      std::vector<int> key;
      for (int i : places) key.push_back(w[i]);
      projected[key] += mu;
    }
    int i = length - 1;
    while (i >= 0 && ++w[i] == r) w[i--] = 0;
    if (i < 0) break;
  }
  double h = 0.0;
  for (const auto& [key, q] : projected) h -= q * std::log(q);
  return h;
}

std::vector<u128> all_subset_counts(const Sft& sft, int n) {
  const auto words = enumerate_words(sft, n);
  const auto r = static_cast<std::uint64_t>(sft.alphabet_size());
  const std::size_t count = std::size_t{1} << n;
  std::vector<u128> out(count, 1);
  std::vector<std::uint64_t> keys(words.size());
  for (std::size_t mask = 1; mask < count; ++mask) {
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t key = 0;
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1U) key = key * r + static_cast<std::uint64_t>(words[w][i]);
      }
      keys[w] = key;
    }
    std::sort(keys.begin(), keys.end());
    out[mask] = static_cast<u128>(std::unique(keys.begin(), keys.end()) - keys.begin());
  }
  return out;
}

double weighted_count(const Sft& sft, const Potential& f, const SubsetSpec& subset) {
  if (subset.empty()) return 1.0;
  const auto places = subset.elements();
  std::set<std::vector<int>> seen;
  for (const auto& w : enumerate_words(sft, subset.horizon())) {
    std::vector<int> key;
    for (int i : places) key.push_back(w[i]);
    seen.insert(key);
  }
  double total = 0.0;
  for (const auto& key : seen) {
    double e = 0.0;
    for (int a : key) e += f(a);
    total += std::exp(e);
  }
  return total;
}

ComplexityProfile finite_profile(const Sft& sft, const CoefficientSystem& coeffs, int n) {
  if (n < 1 || n > 16) throw CapExceeded("oracle profile supports 1 <= n <= 16");
  const std::uint64_t full = SubsetSpec::full_mask(n);
  std::vector<double> logs(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask <= full; ++mask)
    logs[mask] = std::log(to_double(count_words_at_oracle(sft, SubsetSpec(n, mask))));
  ComplexityProfile p;
  p.n = n;
  p.coeffs_spec = coeffs.spec();
  p.entropy_n = logs[full] / n;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    const double c = coeffs.weight(n, std::popcount(mask));
    p.asc += c * logs[mask];
    p.intricacy += c * (logs[mask] + logs[full ^ mask] - logs[full]);
    if (mask & 1U) p.acc += c * logs[mask];
  }
  p.asc /= n;
  p.intricacy /= n;
  p.acc /= n;
  return p;
}

double full_shift_block_asc(int r, int n, int block_k) {
  const int width = std::max(1, block_k);
  double covered = 0.0;
  for (int j = 0; j < n + width - 1; ++j) {
    const int lo = std::max(0, j - width + 1);
    const int hi = std::min(n - 1, j);
    covered += 1.0 - std::ldexp(1.0, -(hi - lo + 1));
  }
  return std::log(static_cast<double>(r)) * covered / n;
}

double monte_carlo_expectation(const MarkovMeasure& m, int n) {
  if (m.block_len() != 1) throw InputError("closed-form expectation needs a 1-step chain");
  const int horizon = 2 * n;
  double h0 = 0.0;
  for (Eigen::Index j = 0; j < m.p().size(); ++j) h0 -= xlogx(m.p()(j));
  std::vector<double> hstep(horizon, 0.0);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(m.state_count(), m.state_count());
  for (int g = 1; g < horizon; ++g) {
    Q = Q * m.P();
    for (Eigen::Index j = 0; j < Q.rows(); ++j)
      for (Eigen::Index k = 0; k < Q.cols(); ++k) hstep[g] -= m.p()(j) * xlogx(Q(j, k));
  }
  // Place 0 is always sampled; every other place with probability 1/2.
  // i < j are consecutive sampled places with probability q_i 2^{-(j-i)}.
  double expected = h0;
  for (int i = 0; i < horizon; ++i) {
    const double qi = i == 0 ? 1.0 : 0.5;
    for (int j = i + 1; j < horizon; ++j) expected += qi * std::ldexp(1.0, -(j - i)) * hstep[j - i];
  }
  return expected / horizon;
}

}  // namespace intricacy::oracle
