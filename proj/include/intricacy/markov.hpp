#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "intricacy/coeffs.hpp"
#include "intricacy/sft.hpp"
#include "intricacy/subset.hpp"
#include "intricacy/topo.hpp"

namespace intricacy {

/// Stationary vector of a row-stochastic matrix: direct solve of p(P - I) = 0
/// with one equation replaced by Σp = 1, power-iteration fallback. Throws
/// InputError when the stationary vector is not unique.
Eigen::VectorXd stationary(const Eigen::MatrixXd& P);

/// Stationary Markov chain on k-blocks. A state's symbol is the last symbol
/// of its block, so the symbol process is the original k-step chain.
class MarkovMeasure {
 public:
  static MarkovMeasure one_step(const Eigen::MatrixXd& P,
                                std::optional<Eigen::VectorXd> p = std::nullopt);
  /// states are digit strings of equal length k; P(u, v) > 0 requires the
  /// blocks to overlap (u[1:] == v[:-1]).
  static MarkovMeasure block_chain(const std::vector<std::string>& states, const Eigen::MatrixXd& P,
                                   std::optional<Eigen::VectorXd> p = std::nullopt,
                                   int alphabet_size = 0);

  int block_len() const { return block_len_; }
  int alphabet_size() const { return alphabet_size_; }
  int state_count() const { return static_cast<int>(P_.rows()); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<int>& symbol_of_state() const { return symbol_; }
  const Eigen::MatrixXd& P() const { return P_; }
  const Eigen::VectorXd& p() const { return p_; }

  /// P^g.
  Eigen::MatrixXd power(int g) const;

  /// μ[w_0 ... w_{m-1}] of the symbol process.
  double cylinder_measure(const std::vector<int>& word) const;

  /// True when every positive-probability transition is allowed in `sft`.
  bool supported_on(const Sft& sft) const;

 private:
  MarkovMeasure() = default;
  void validate();

  int block_len_ = 1;
  int alphabet_size_ = 0;
  std::vector<std::string> states_;
  std::vector<int> symbol_;
  Eigen::MatrixXd P_;
  Eigen::VectorXd p_;
};

/// Builds the block chain of a k-step chain. `conditional[w]` lists the
/// probabilities of each next symbol after the admissible k-block w.
MarkovMeasure recode_higher_block(const std::map<std::string, std::vector<double>>& conditional,
                                  const Sft& sft);

/// -Σ_j p_j Σ_k P_jk log P_jk (nats).
double entropy_rate(const MarkovMeasure& m);

/// -Σ_j p_j Σ_z q_jz log q_jz with q_jz = Σ_{v: symbol(v) = z} (P^i)_{jv}.
double gap_conditional_entropy(const MarkovMeasure& m, int i);

struct MarkovSeries {
  double entropy = 0.0;
  double asc = 0.0;
  double intricacy = 0.0;
  double tail_bound = 0.0;
  int terms = 0;
};

/// Asc_μ = (1/2) Σ_{i=1}^{K} 2^{-i} H_μ(α|α_i), Int_μ = 2 Asc_μ - h_μ.
MarkovSeries asc_series_markov(const MarkovMeasure& m, int terms = 20);

/// H_μ(α_S). Empty S gives 0.
double sampled_joint_entropy(const MarkovMeasure& m, const SubsetSpec& subset,
                             double cap = 1e7);

struct MonteCarloEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
};

struct SampledEntropyResult {
  int n = 0;
  double asc = 0.0;
  double intricacy = 0.0;
  double entropy_n = 0.0;  // H_μ(α_{n*}) / n
  std::optional<MarkovSeries> series;
  std::optional<MonteCarloEstimate> monte_carlo;
};

/// Asc_μ(n) = (1/n) Σ_S c_S^n H_μ(α_S), Int_μ(n) likewise.
SampledEntropyResult asc_finite(const MarkovMeasure& m, const CoefficientSystem& coeffs, int n,
                                int threads = 0);

/// Σ_i [∫ x²(1-x)^{i-1} dλ] H_μ(α|α_i), 1-step chains only.
SeriesValue asc_lambda(const MarkovMeasure& m, const SymmetricMeasure& lambda, int terms = 20);

/// Mean of H_μ(α_{S(ξ)}) / (2n) over ξ ∈ {0,1}^{2n} with ξ_0 = 1 and fair
/// coin flips elsewhere. Samples come in fixed blocks of 256, block b drawn
/// from mt19937_64 seeded with splitmix64(seed + b), so the estimate does not
/// depend on the thread count.
MonteCarloEstimate monte_carlo_asc(const MarkovMeasure& m, int n, long samples,
                                   std::uint64_t seed, int threads = 0);

}  // namespace intricacy
