#pragma once

#include <optional>
#include <string>
#include <vector>

#include "intricacy/coeffs.hpp"
#include "intricacy/sft.hpp"

namespace intricacy {

struct ProfileOptions {
  /// 0 and 1 both mean the time-0 cover; k > 1 joins k consecutive
  /// coordinates, so N(S) becomes N(S + {0..k-1}).
  int block_k = 0;
  int threads = 0;  // 0 = available parallelism
  int max_n = 24;
};

/// Finite-n complexity functions, all in nats except alt.
struct ComplexityProfile {
  int n = 0;
  int block_k = 0;
  double entropy_n = 0.0;  // H_n = log N(n*) / n
  double asc = 0.0;
  double intricacy = 0.0;
  double acc = 0.0;
  std::optional<double> alt;  // uniform weights only
  std::string coeffs_spec;
};

/// Asc_n, Int_n, Acc_n by full enumeration of the 2^n subsets.
ComplexityProfile finite_profile(const Sft& sft, const CoefficientSystem& coeffs, int n,
                                 const ProfileOptions& options = {});

enum class Enumeration { full, canonical };

/// b_n = Σ_S c_S^n log N(S). `canonical` only visits S containing 0 and
/// weights each by its number of translates inside n*.
double weighted_log_count(const Sft& sft, const CoefficientSystem& coeffs, int n,
                          Enumeration method = Enumeration::full,
                          const ProfileOptions& options = {});

/// Alt_n = 2^-n Σ_S N(S).
double alternate_complexity(const Sft& sft, int n, const ProfileOptions& options = {});

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  int terms = 0;
};

/// log |L_k| for k = 1..K, via scaled path sums (no integer overflow).
std::vector<double> log_language_sizes(const Sft& sft, int K);

/// Uniform-weight limit (1/4) Σ_k log|L_k| / 2^k for shifts whose adjacency
/// squares to a positive matrix. Throws InputError otherwise.
SeriesValue asc_series(const Sft& sft, int terms = 20);
/// 2 asc_series - h_top.
SeriesValue int_series(const Sft& sft, int terms = 20);

struct RecursionRow {
  int n = 0;
  double direct = 0.0;
  double recursive = 0.0;
  double relative_error = 0.0;
};

struct RecursionReport {
  std::vector<RecursionRow> rows;
  double tolerance = 1e-9;
  bool passed() const;
};

/// Compares a_m = Σ_{S ⊂ m*} log N(S) computed by enumeration against
/// a_m = λ_m + 2 a_{m-1} + 2^{m-2} Σ_{k=1}^{m-2} λ_k / 2^k, m = 1..n.
RecursionReport recursion_check(const Sft& sft, int n, int threads = 0);

}  // namespace intricacy
