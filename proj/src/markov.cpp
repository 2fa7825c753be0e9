#include "intricacy/markov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "intricacy/detail/average.hpp"
#include "intricacy/error.hpp"
#include "intricacy/numeric.hpp"

namespace intricacy {

namespace {

constexpr double kRowTolerance = 1e-12;
constexpr double kStationaryTolerance = 1e-10;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// -Σ_j p_j Σ_k Q_jk log Q_jk
double step_entropy(const Eigen::VectorXd& p, const Eigen::MatrixXd& Q) {
  double h = 0.0;
  for (Eigen::Index j = 0; j < Q.rows(); ++j) {
    double row = 0.0;
    for (Eigen::Index k = 0; k < Q.cols(); ++k) row += xlogx(Q(j, k));
    h -= p(j) * row;
  }
  return h;
}

double vector_entropy(const Eigen::VectorXd& p) {
  double h = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j) h -= xlogx(p(j));
  return h;
}

std::string word_string(const std::vector<int>& w) {
  std::string s;
  for (int a : w) s += static_cast<char>('0' + a);
  return s;
}

std::set<std::string> language(const Sft& sft, int n) {
  std::set<std::string> out;
  for (const auto& w : enumerate_words(sft, n)) out.insert(word_string(w));
  return out;
}

/// Σ_S-place words of the symbol process: forward DP over block states,
/// visiting every symbol tuple with positive probability.
double block_joint_entropy(const MarkovMeasure& m, const std::vector<int>& places,
                           const std::vector<Eigen::MatrixXd>& powers) {
  const int states = m.state_count();
  const int r = m.alphabet_size();
  double h = 0.0;
  std::vector<Eigen::VectorXd> stack(places.size() + 1, Eigen::VectorXd(states));
  std::function<void(std::size_t)> descend = [&](std::size_t depth) {
    if (depth == places.size()) {
      h -= xlogx(stack[depth].sum());
      return;
    }
    Eigen::VectorXd base;
    if (depth == 0) {
      base = m.p();
    } else {
      base = powers[places[depth] - places[depth - 1]].transpose() * stack[depth];
    }
    for (int a = 0; a < r; ++a) {
      auto& next = stack[depth + 1];
      bool any = false;
      for (int v = 0; v < states; ++v) {
        next(v) = m.symbol_of_state()[v] == a ? base(v) : 0.0;
        any = any || next(v) > 0.0;
      }
      if (any) descend(depth + 1);
    }
  };
  descend(0);
  return h;
}

std::vector<Eigen::MatrixXd> power_table(const MarkovMeasure& m, int max_gap) {
  std::vector<Eigen::MatrixXd> powers(std::max(max_gap, 0) + 1);
  powers[0] = Eigen::MatrixXd::Identity(m.state_count(), m.state_count());
  for (int g = 1; g <= max_gap; ++g) powers[g] = powers[g - 1] * m.P();
  return powers;
}

}  // namespace

Eigen::VectorXd stationary(const Eigen::MatrixXd& P) {
  const Eigen::Index n = P.rows();
  if (n == 0 || P.cols() != n) throw InputError("transition matrix must be square and nonempty");
  const Eigen::MatrixXd A = P.transpose() - Eigen::MatrixXd::Identity(n, n);
  Eigen::FullPivLU<Eigen::MatrixXd> kernel(A);
  kernel.setThreshold(1e-10);
  if (kernel.dimensionOfKernel() != 1)
    throw InputError("stationary vector is not unique (chain has " +
                     std::to_string(kernel.dimensionOfKernel()) +
                     " closed classes); supply p explicitly");

  Eigen::MatrixXd B = A;
  B.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
  if (lu.rcond() < 1e-12) warn("stationary solve is ill-conditioned");
  Eigen::VectorXd p = lu.solve(rhs);

  const bool usable = p.allFinite() && p.minCoeff() > -1e-12 &&
                      (P.transpose() * p - p).cwiseAbs().maxCoeff() <= kStationaryTolerance;
  if (!usable) {
    warn("direct stationary solve failed; using power iteration");
    const Eigen::MatrixXd lazy = 0.5 * (P.transpose() + Eigen::MatrixXd::Identity(n, n));
    p = Eigen::VectorXd::Constant(n, 1.0 / n);
    for (int it = 0; it < 1000000; ++it) {
      Eigen::VectorXd next = lazy * p;
      const double change = (next - p).cwiseAbs().maxCoeff();
      p = next;
      if (change < 1e-15) break;
    }
  }
  p = p.cwiseMax(0.0);
  p /= p.sum();
  return p;
}

MarkovMeasure MarkovMeasure::one_step(const Eigen::MatrixXd& P, std::optional<Eigen::VectorXd> p) {
  std::vector<std::string> states;
  if (P.rows() > 10) throw InputError("one-step chains support at most 10 symbols");
  for (Eigen::Index i = 0; i < P.rows(); ++i) states.push_back(std::string(1, static_cast<char>('0' + i)));
  return block_chain(states, P, std::move(p), static_cast<int>(P.rows()));
}

MarkovMeasure MarkovMeasure::block_chain(const std::vector<std::string>& states,
                                         const Eigen::MatrixXd& P, std::optional<Eigen::VectorXd> p,
                                         int alphabet_size) {
  if (states.empty()) throw InputError("Markov chain needs at least one state");
  if (P.rows() != static_cast<Eigen::Index>(states.size()) || P.cols() != P.rows())
    throw InputError("transition matrix shape does not match the state list");
  MarkovMeasure m;
  m.block_len_ = static_cast<int>(states[0].size());
  if (m.block_len_ < 1) throw InputError("empty state block");
  int max_symbol = 0;
  std::set<std::string> seen;
  for (const auto& s : states) {
    if (static_cast<int>(s.size()) != m.block_len_) throw InputError("state blocks differ in length");
    if (!seen.insert(s).second) throw InputError("duplicate state '" + s + "'");
    for (char c : s) {
      if (c < '0' || c > '9') throw InputError("state '" + s + "' is not a digit string");
      max_symbol = std::max(max_symbol, c - '0');
    }
    m.symbol_.push_back(s.back() - '0');
  }
  m.alphabet_size_ = alphabet_size > 0 ? alphabet_size : max_symbol + 1;
  if (max_symbol >= m.alphabet_size_) throw InputError("state uses a symbol outside the alphabet");
  m.states_ = states;
  m.P_ = P;
  m.p_ = p ? *p : Eigen::VectorXd();
  m.validate();
  if (!p) m.p_ = stationary(m.P_);
  return m;
}

void MarkovMeasure::validate() {
  if (!P_.allFinite() || P_.minCoeff() < 0.0) throw InputError("transition probabilities must be >= 0");
  for (Eigen::Index j = 0; j < P_.rows(); ++j) {
    if (std::abs(P_.row(j).sum() - 1.0) > kRowTolerance)
      throw InputError("row " + std::to_string(j) + " of P does not sum to 1");
    for (Eigen::Index k = 0; k < P_.cols(); ++k) {
      if (P_(j, k) > 0.0 && states_[j].substr(1) != states_[k].substr(0, block_len_ - 1))
        throw InputError("transition " + states_[j] + " -> " + states_[k] + " does not overlap");
    }
  }
  if (p_.size() > 0) {
    if (p_.size() != P_.rows()) throw InputError("stationary vector has the wrong length");
    if (p_.minCoeff() < 0.0 || std::abs(p_.sum() - 1.0) > kStationaryTolerance)
      throw InputError("stationary vector must be a probability vector");
    if ((P_.transpose() * p_ - p_).cwiseAbs().maxCoeff() > kStationaryTolerance)
      throw InputError("supplied p is not stationary for P");
  }
}

Eigen::MatrixXd MarkovMeasure::power(int g) const {
  if (g < 0) throw InputError("negative matrix power");
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(P_.rows(), P_.cols());
  for (int i = 0; i < g; ++i) out = out * P_;
  return out;
}

double MarkovMeasure::cylinder_measure(const std::vector<int>& word) const {
  if (word.empty()) return 1.0;
  Eigen::VectorXd alpha(state_count());
  for (int v = 0; v < state_count(); ++v) alpha(v) = symbol_[v] == word[0] ? p_(v) : 0.0;
  for (std::size_t t = 1; t < word.size(); ++t) {
    Eigen::VectorXd next = P_.transpose() * alpha;
    for (int v = 0; v < state_count(); ++v) {
      if (symbol_[v] != word[t]) next(v) = 0.0;
    }
    alpha = std::move(next);
  }
  return alpha.sum();
}

bool MarkovMeasure::supported_on(const Sft& sft) const {
  if (alphabet_size_ > sft.alphabet_size()) return false;
  const auto words = language(sft, block_len_ + 1);
  for (int j = 0; j < state_count(); ++j) {
    for (int k = 0; k < state_count(); ++k) {
      if (P_(j, k) > 0.0 && !words.contains(states_[j] + states_[k].back())) return false;
    }
  }
  return true;
}

MarkovMeasure recode_higher_block(const std::map<std::string, std::vector<double>>& conditional,
                                  const Sft& sft) {
  if (conditional.empty()) throw InputError("no conditional distributions given");
  const int k = static_cast<int>(conditional.begin()->first.size());
  const int r = sft.alphabet_size();
  if (k < 1) throw InputError("empty block in conditional table");
  const auto blocks_set = language(sft, k);
  const auto extensions = language(sft, k + 1);
  const std::vector<std::string> blocks(blocks_set.begin(), blocks_set.end());

  for (const auto& [block, row] : conditional) {
    if (static_cast<int>(block.size()) != k) throw InputError("conditional blocks differ in length");
    if (static_cast<int>(row.size()) != r)
      throw InputError("conditional for '" + block + "' must list " + std::to_string(r) + " probabilities");
  }

  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(blocks.size()),
                                            static_cast<Eigen::Index>(blocks.size()));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto it = conditional.find(blocks[i]);
    if (it == conditional.end()) throw InputError("no conditional for admissible block '" + blocks[i] + "'");
    for (int a = 0; a < r; ++a) {
      const double q = it->second[a];
      if (q == 0.0) continue;
      const std::string word = blocks[i] + static_cast<char>('0' + a);
      if (!extensions.contains(word))
        throw InputError("conditional puts mass on the forbidden word '" + word + "'");
      const std::string target = word.substr(1);
      const auto pos = std::lower_bound(blocks.begin(), blocks.end(), target) - blocks.begin();
      P(static_cast<Eigen::Index>(i), pos) += q;
    }
  }
  return MarkovMeasure::block_chain(blocks, P, std::nullopt, r);
}

double entropy_rate(const MarkovMeasure& m) { return step_entropy(m.p(), m.P()); }

double gap_conditional_entropy(const MarkovMeasure& m, int i) {
  if (i < 1) throw InputError("gap must be >= 1");
  const Eigen::MatrixXd Q = m.power(i);
  Eigen::MatrixXd by_symbol = Eigen::MatrixXd::Zero(m.state_count(), m.alphabet_size());
  for (int v = 0; v < m.state_count(); ++v) by_symbol.col(m.symbol_of_state()[v]) += Q.col(v);
  return step_entropy(m.p(), by_symbol);
}

MarkovSeries asc_series_markov(const MarkovMeasure& m, int terms) {
  if (m.block_len() > 2)
    throw InputError("series supports block length 1 or 2; recode longer blocks first");
  if (terms < 1) throw InputError("need at least one term");
  MarkovSeries out;
  out.terms = terms;
  out.entropy = entropy_rate(m);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(m.state_count(), m.state_count());
  Eigen::MatrixXd by_symbol(m.state_count(), m.alphabet_size());
  double s = 0.0;
  for (int i = 1; i <= terms; ++i) {
    Q = Q * m.P();
    by_symbol.setZero();
    for (int v = 0; v < m.state_count(); ++v) by_symbol.col(m.symbol_of_state()[v]) += Q.col(v);
    s += std::ldexp(step_entropy(m.p(), by_symbol), -i);
  }
  out.asc = 0.5 * s;
  out.intricacy = 2.0 * out.asc - out.entropy;
  out.tail_bound = std::ldexp(std::log(static_cast<double>(m.alphabet_size())), -terms);
  return out;
}

double sampled_joint_entropy(const MarkovMeasure& m, const SubsetSpec& subset, double cap) {
  if (subset.empty()) return 0.0;
  const auto places = subset.elements();
  const int max_gap = places.back() - places.front();
  const auto powers = power_table(m, max_gap);
  if (m.block_len() == 1) {
    double h = vector_entropy(m.p());
    for (std::size_t i = 1; i < places.size(); ++i)
      h += step_entropy(m.p(), powers[places[i] - places[i - 1]]);
    return h;
  }
  if (std::pow(static_cast<double>(m.alphabet_size()), static_cast<double>(places.size())) > cap)
    throw CapExceeded("joint entropy enumeration exceeds the cap of " + format_sig(cap) + " tuples");
  return block_joint_entropy(m, places, powers);
}

SampledEntropyResult asc_finite(const MarkovMeasure& m, const CoefficientSystem& coeffs, int n,
                                int threads) {
  const int cap = m.block_len() == 1 ? 20 : 12;
  if (n < 1) throw InputError("n must be >= 1");
  if (n > cap)
    throw CapExceeded("finite-n entropy average supports n <= " + std::to_string(cap) +
                      " for block length " + std::to_string(m.block_len()));
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> H(count, 0.0);
  if (m.block_len() == 1) {
    const auto powers = power_table(m, n - 1);
    std::vector<double> hstep(n, 0.0);
    for (int g = 1; g < n; ++g) hstep[g] = step_entropy(m.p(), powers[g]);
    const double h0 = vector_entropy(m.p());
    for (std::size_t mask = 1; mask < count; ++mask) {
      double h = h0;
      int prev = -1;
      for (std::uint64_t b = mask; b != 0; b &= b - 1) {
        const int j = std::countr_zero(b);
        if (prev >= 0) h += hstep[j - prev];
        prev = j;
      }
      H[mask] = h;
    }
  } else {
    parallel_for(count, threads, [&](std::size_t mask) {
      if (mask != 0) H[mask] = sampled_joint_entropy(m, SubsetSpec(n, mask));
    });
  }
  const std::size_t full = count - 1;
  SampledEntropyResult out;
  out.n = n;
  out.entropy_n = H[full] / n;
  out.asc = detail::coefficient_sum(coeffs, n, [&](std::size_t s) { return H[s]; }) / n;
  out.intricacy = detail::coefficient_sum(coeffs, n, [&](std::size_t s) {
                    return H[s] + H[full ^ s] - H[full];
                  }) / n;
  return out;
}

SeriesValue asc_lambda(const MarkovMeasure& m, const SymmetricMeasure& lambda, int terms) {
  if (m.block_len() != 1) throw InputError("general weights are supported for 1-step chains only");
  if (terms < 1) throw InputError("need at least one term");
  SeriesValue out;
  out.terms = terms;
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(m.state_count(), m.state_count());
  double s = 0.0;
  for (int i = 1; i <= terms; ++i) {
    Q = Q * m.P();
    double w = 0.0;
    for (const auto& a : lambda.atoms()) {
      w += a.mass * a.location * a.location * std::pow(1.0 - a.location, i - 1);
    }
    w += lambda.lebesgue_mass() * 2.0 / (static_cast<double>(i) * (i + 1) * (i + 2));
    s += w * step_entropy(m.p(), Q);
  }
  out.value = s;
  double tail = 0.0;
  for (const auto& a : lambda.atoms()) tail += a.mass * a.location * std::pow(1.0 - a.location, terms);
  tail += lambda.lebesgue_mass() / ((terms + 1.0) * (terms + 2.0));
  out.tail_bound = tail * std::log(static_cast<double>(m.alphabet_size()));
  return out;
}

MonteCarloEstimate monte_carlo_asc(const MarkovMeasure& m, int n, long samples,
                                   std::uint64_t seed, int threads) {
  if (n < 1 || 2 * n > SubsetSpec::kMaxHorizon) throw CapExceeded("Monte Carlo supports 1 <= n <= 32");
  if (samples < 1) throw InputError("need at least one sample");
  const int horizon = 2 * n;
  constexpr long kBlock = 256;
  const long blocks = (samples + kBlock - 1) / kBlock;
  std::vector<double> values(static_cast<std::size_t>(samples), 0.0);

  std::vector<double> hstep;
  double h0 = 0.0;
  if (m.block_len() == 1) {
    const auto powers = power_table(m, horizon - 1);
    hstep.assign(horizon, 0.0);
    for (int g = 1; g < horizon; ++g) hstep[g] = step_entropy(m.p(), powers[g]);
    h0 = vector_entropy(m.p());
  }

  parallel_for(static_cast<std::size_t>(blocks), threads, [&](std::size_t b) {
    std::mt19937_64 engine(splitmix64(seed + b));
    const long begin = static_cast<long>(b) * kBlock;
    const long end = std::min(samples, begin + kBlock);
    for (long s = begin; s < end; ++s) {
      const std::uint64_t mask = ((engine() << 1) | 1U) & SubsetSpec::full_mask(horizon);
      double h;
      if (m.block_len() == 1) {
        h = h0;
        int prev = 0;
        for (std::uint64_t rest = mask & (mask - 1); rest != 0; rest &= rest - 1) {
          const int j = std::countr_zero(rest);
          h += hstep[j - prev];
          prev = j;
        }
      } else {
        h = sampled_joint_entropy(m, SubsetSpec(horizon, mask));
      }
      values[static_cast<std::size_t>(s)] = h / horizon;
    }
  });

  MonteCarloEstimate out;
  out.samples = samples;
  out.seed = seed;
  out.mean = pairwise_sum(values) / static_cast<double>(samples);
  if (samples > 1) {
    const double ss = pairwise_sum(0, values.size(), [&](std::size_t i) {
      const double d = values[i] - out.mean;
      return d * d;
    });
    out.stderr_ = std::sqrt(ss / static_cast<double>(samples - 1)) / std::sqrt(static_cast<double>(samples));
  }
  return out;
}

}  // namespace intricacy
