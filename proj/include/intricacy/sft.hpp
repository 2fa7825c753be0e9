#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "intricacy/numeric.hpp"
#include "intricacy/subset.hpp"

namespace intricacy {

using BoolMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// A shift of finite type in vertex-shift normal form: a directed graph on
/// states, each state carrying a symbol of the original alphabet. Adjacency
/// input maps state i to symbol i; forbidden-word input is recoded onto
/// (L-1)-blocks, with a state's symbol being the first symbol of its block.
/// The graph is pruned to its essential part, so every finite path extends
/// to a bi-infinite one. Immutable after construction.
class Sft {
 public:
  static constexpr int kMaxGap = SubsetSpec::kMaxHorizon;

  static Sft from_adjacency(const Eigen::MatrixXi& adjacency);
  /// Same, reusing a previously computed reachability cache (checked for
  /// shape and reach(1) == pruned adjacency; falls back to recomputing).
  static Sft from_adjacency(const Eigen::MatrixXi& adjacency, std::vector<BoolMatrix> reach);
  /// Words are strings of digits '0'..'9', each below alphabet_size.
  static Sft from_forbidden_words(int alphabet_size, const std::vector<std::string>& forbidden);

  int alphabet_size() const { return alphabet_size_; }
  int state_count() const { return static_cast<int>(adjacency_.rows()); }
  /// Length of the blocks the states stand for (1 for adjacency input).
  int block_length() const { return block_length_; }

  /// Essential state graph M.
  const Eigen::MatrixXi& adjacency() const { return adjacency_; }
  const std::vector<int>& symbol_of_state() const { return symbol_of_state_; }
  bool symbols_injective() const { return injective_; }

  /// sign(M^gap) for 1 <= gap <= kMaxGap.
  const BoolMatrix& reach(int gap) const;
  const std::vector<BoolMatrix>& reach_cache() const { return reach_; }

  /// log of the Perron root of M (nats).
  double perron_log() const { return perron_log_; }
  bool perron_converged() const { return perron_converged_; }

  /// True when the states are the symbols and every entry of M^2 is positive.
  bool square_positive() const;

 private:
  Sft() = default;
  void finish(std::vector<BoolMatrix> reach);

  int alphabet_size_ = 0;
  int block_length_ = 1;
  bool injective_ = true;
  Eigen::MatrixXi adjacency_;
  std::vector<int> symbol_of_state_;
  std::vector<BoolMatrix> reach_;  // reach_[g-1] = sign(M^g)
  double perron_log_ = 0.0;
  bool perron_converged_ = false;
};

/// N(S) = |L_S(X)|, the number of distinct words seen at the places in S.
/// N(∅) = 1. Throws CapExceeded if the count overflows 128 bits.
u128 count_words_at(const Sft& sft, const SubsetSpec& subset);

/// |L_n(X)|.
u128 complexity_count(const Sft& sft, int n);

/// h_top = log rho(M), nats. Falls back (with a warning) to a log|L_n|/n
/// growth-rate estimate if power iteration does not converge.
double topological_entropy(const Sft& sft);

/// All words of length n (n <= 20, alphabet^n <= cap), lexicographic.
/// Enumerates graph paths directly; independent of the reach matrices.
std::vector<std::vector<int>> enumerate_words(const Sft& sft, int n,
                                              std::size_t cap = 10'000'000);

/// Projects every word of L_n (n = subset horizon) onto S and counts the
/// distinct projections.
u128 count_words_at_oracle(const Sft& sft, const SubsetSpec& subset,
                           std::size_t cap = 10'000'000);

}  // namespace intricacy
