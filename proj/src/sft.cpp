#include "intricacy/sft.hpp"

#include <cmath>
#include <functional>
#include <set>

#include "intricacy/detail/paths.hpp"
#include "intricacy/error.hpp"
#include "intricacy/perron.hpp"

namespace intricacy {

namespace {

/// Indices of states that lie on a bi-infinite path (iterated removal of
/// states with no incoming or no outgoing edge).
std::vector<int> essential_states(const Eigen::MatrixXi& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int u = 0; u < n; ++u) {
      if (!alive[u]) continue;
      bool out = false;
      bool in = false;
      for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        out = out || m(u, v) != 0;
        in = in || m(v, u) != 0;
      }
      if (!out || !in) {
        alive[u] = false;
        changed = true;
      }
    }
  }
  std::vector<int> keep;
  for (int u = 0; u < n; ++u) {
    if (alive[u]) keep.push_back(u);
  }
  return keep;
}

BoolMatrix to_bool(const Eigen::MatrixXi& m) {
  return m.unaryExpr([](int x) { return static_cast<std::uint8_t>(x != 0); });
}

}  // namespace

Sft Sft::from_adjacency(const Eigen::MatrixXi& adjacency) { return from_adjacency(adjacency, {}); }

Sft Sft::from_adjacency(const Eigen::MatrixXi& adjacency, std::vector<BoolMatrix> reach) {
  if (adjacency.rows() == 0 || adjacency.rows() != adjacency.cols())
    throw InputError("adjacency matrix must be square and nonempty");
  if ((adjacency.array() != 0 && adjacency.array() != 1).any())
    throw InputError("adjacency matrix entries must be 0 or 1");

  const auto keep = essential_states(adjacency);
  if (keep.empty()) throw InputError("shift is empty after pruning stranded symbols");

  Sft sft;
  sft.alphabet_size_ = static_cast<int>(adjacency.rows());
  sft.adjacency_.resize(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) sft.adjacency_(i, j) = adjacency(keep[i], keep[j]);
  sft.symbol_of_state_ = keep;
  sft.injective_ = true;
  sft.finish(std::move(reach));
  return sft;
}

Sft Sft::from_forbidden_words(int alphabet_size, const std::vector<std::string>& forbidden) {
  if (alphabet_size < 1 || alphabet_size > 10)
    throw InputError("forbidden-word input supports alphabets of 1..10 digit symbols");
  std::size_t longest = 0;
  for (const auto& w : forbidden) {
    if (w.empty()) throw InputError("forbidden words must be nonempty");
    for (char c : w) {
      if (c < '0' || c - '0' >= alphabet_size)
        throw InputError("forbidden word '" + w + "' uses a symbol outside the alphabet");
    }
    longest = std::max(longest, w.size());
  }
  const int block = std::max<int>(1, static_cast<int>(longest) - 1);
  const double state_space = std::pow(alphabet_size, block);
  if (state_space > 4096) throw CapExceeded("higher-block recoding would need over 4096 states");

  auto allowed = [&](const std::string& s) {
    for (const auto& w : forbidden) {
      if (s.find(w) != std::string::npos) return false;
    }
    return true;
  };

  std::vector<std::string> blocks;
  std::function<void(std::string)> grow = [&](std::string prefix) {
    if (static_cast<int>(prefix.size()) == block) {
      if (allowed(prefix)) blocks.push_back(prefix);
      return;
    }
    for (int a = 0; a < alphabet_size; ++a) grow(prefix + static_cast<char>('0' + a));
  };
  grow("");

  const auto count = static_cast<Eigen::Index>(blocks.size());
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(count, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    for (Eigen::Index j = 0; j < count; ++j) {
      const auto& u = blocks[i];
      const auto& v = blocks[j];
      if (u.substr(1) == v.substr(0, block - 1) && allowed(u + v.back())) m(i, j) = 1;
    }
  }
  if (count == 0) throw InputError("shift is empty: every block contains a forbidden word");

  const auto keep = essential_states(m);
  if (keep.empty()) throw InputError("shift is empty after pruning stranded blocks");

  Sft sft;
  sft.alphabet_size_ = alphabet_size;
  sft.block_length_ = block;
  sft.adjacency_.resize(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(keep.size()));
  std::set<int> seen;
  sft.injective_ = true;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) sft.adjacency_(i, j) = m(keep[i], keep[j]);
    const int symbol = blocks[keep[i]][0] - '0';
    sft.symbol_of_state_.push_back(symbol);
    sft.injective_ = sft.injective_ && seen.insert(symbol).second;
  }
  sft.finish({});
  return sft;
}

void Sft::finish(std::vector<BoolMatrix> reach) {
  const BoolMatrix m = to_bool(adjacency_);
  const bool reusable = static_cast<int>(reach.size()) == kMaxGap && reach[0] == m &&
                        std::all_of(reach.begin(), reach.end(), [&](const BoolMatrix& r) {
                          return r.rows() == m.rows() && r.cols() == m.cols();
                        });
  if (reusable) {
    reach_ = std::move(reach);
  } else {
    if (!reach.empty()) warn("ignoring reachability cache that does not match the adjacency");
    reach_.clear();
    reach_.reserve(kMaxGap);
    reach_.push_back(m);
    for (int g = 2; g <= kMaxGap; ++g) {
      const Eigen::MatrixXi product = reach_.back().cast<int>() * adjacency_;
      reach_.push_back(to_bool(product));
    }
  }

  const auto perron = perron_root(adjacency_.cast<double>().eval());
  perron_converged_ = perron.converged;
  perron_log_ = perron.root > 0 ? std::log(perron.root) : 0.0;
}

const BoolMatrix& Sft::reach(int gap) const {
  if (gap < 1 || gap > kMaxGap) throw CapExceeded("gap " + std::to_string(gap) + " outside the reach cache");
  return reach_[gap - 1];
}

bool Sft::square_positive() const {
  if (!injective_ || block_length_ != 1) return false;
  return (reach(2).array() != 0).all();
}

u128 count_words_at(const Sft& sft, const SubsetSpec& subset) {
  const auto e = subset.elements();
  const std::vector<u128> ones(sft.alphabet_size(), 1);
  return detail::word_sum<u128>(sft, std::span<const int>(e), ones);
}

u128 complexity_count(const Sft& sft, int n) {
  if (n < 1) throw InputError("complexity_count needs n >= 1");
  return count_words_at(sft, SubsetSpec::full(n));
}

double topological_entropy(const Sft& sft) {
  if (sft.perron_converged()) return sft.perron_log();
  // log|L_n| growth estimated from the ratio of path sums, which is immune
  // to the subexponential prefactor.
  warn("power iteration did not converge; estimating entropy from word-count growth");
  const Eigen::MatrixXd m = sft.adjacency().cast<double>();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m.rows());
  double log_total = 0.0;
  constexpr int kBurnIn = 2000;
  constexpr int kWindow = 2000;
  double log_at_burn_in = 0.0;
  for (int i = 1; i <= kBurnIn + kWindow; ++i) {
    v = m.transpose() * v;
    const double s = v.sum();
    log_total += std::log(s);
    v /= s;
    if (i == kBurnIn) log_at_burn_in = log_total;
  }
  return (log_total - log_at_burn_in) / kWindow;
}

std::vector<std::vector<int>> enumerate_words(const Sft& sft, int n, std::size_t cap) {
  if (n < 1 || n > 20) throw CapExceeded("word enumeration supports 1 <= n <= 20");
  if (std::pow(static_cast<double>(sft.alphabet_size()), n) > static_cast<double>(cap))
    throw CapExceeded("word enumeration: alphabet^n exceeds the cap");
  std::set<std::vector<int>> words;
  std::vector<int> path;
  const auto& m = sft.adjacency();
  std::function<void(int)> extend = [&](int state) {
    path.push_back(state);
    if (static_cast<int>(path.size()) == n) {
      std::vector<int> w(n);
      for (int i = 0; i < n; ++i) w[i] = sft.symbol_of_state()[path[i]];
      words.insert(std::move(w));
    } else {
      for (int v = 0; v < sft.state_count(); ++v) {
        if (m(state, v)) extend(v);
      }
    }
    path.pop_back();
  };
  for (int u = 0; u < sft.state_count(); ++u) extend(u);
  return {words.begin(), words.end()};
}

u128 count_words_at_oracle(const Sft& sft, const SubsetSpec& subset, std::size_t cap) {
  if (subset.empty()) return 1;
  const auto e = subset.elements();
  std::set<std::vector<int>> projections;
  for (const auto& w : enumerate_words(sft, subset.horizon(), cap)) {
    std::vector<int> p;
    p.reserve(e.size());
    for (int i : e) p.push_back(w[i]);
    projections.insert(std::move(p));
  }
  return projections.size();
}

}  // namespace intricacy
