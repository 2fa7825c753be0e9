#pragma once

// Brute-force reference computations. Slow on purpose: each one enumerates
// words directly and shares no kernel with the fast paths.

#include "intricacy/coeffs.hpp"
#include "intricacy/markov.hpp"
#include "intricacy/pressure.hpp"
#include "intricacy/sft.hpp"
#include "intricacy/topo.hpp"

namespace intricacy::oracle {

/// H_μ(α_S) from the cylinder measures of every word of length
/// max(horizon, block_len), projected onto S.
double joint_entropy(const MarkovMeasure& m, const SubsetSpec& subset, double cap = 1e7);

/// N(S) for every mask S ⊂ n*, projecting one enumeration of L_n.
std::vector<u128> all_subset_counts(const Sft& sft, int n);

/// Σ over distinct projections onto S of exp Σ f.
double weighted_count(const Sft& sft, const Potential& f, const SubsetSpec& subset);

/// Asc_n, Int_n, Acc_n, H_n with every N(S) taken from count_words_at_oracle
/// and summed left to right. Time-0 cover only.
ComplexityProfile finite_profile(const Sft& sft, const CoefficientSystem& coeffs, int n);

/// Uniform-weight Asc_n of the full r-shift for the k-block cover:
/// (log r / n) Σ_j (1 - 2^{-w_j}), w_j the number of places of n* whose
/// window covers j.
double full_shift_block_asc(int r, int n, int block_k);

/// Exact expectation of the Monte Carlo estimator for a 1-step chain.
double monte_carlo_expectation(const MarkovMeasure& m, int n);

}  // namespace intricacy::oracle
