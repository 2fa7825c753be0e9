#pragma once

#include <map>
#include <vector>

#include "intricacy/coeffs.hpp"
#include "intricacy/sft.hpp"

namespace intricacy {

/// Potential depending on the symbol at coordinate 0 (nats).
struct Potential {
  std::vector<double> values;  // values[a] = f(a)

  static Potential zero(int alphabet_size) { return {std::vector<double>(alphabet_size, 0.0)}; }
  /// Symbols missing from the map are rejected.
  static Potential from_map(const std::map<int, double>& values, int alphabet_size);

  double operator()(int symbol) const { return values.at(symbol); }
};

/// Σ_{w ∈ L_S(X)} exp Σ_{i∈S} f(w_i). Empty S gives 1.
double weighted_count(const Sft& sft, const Potential& f, const SubsetSpec& subset);

/// Asp(n) = (1/n) Σ_S c_S^n log weighted_count(S).
double asp_profile(const Sft& sft, const Potential& f, const CoefficientSystem& coeffs, int n,
                   int threads = 0, int max_n = 24);

/// log of the Perron root of M diag(e^f).
double classical_pressure(const Sft& sft, const Potential& f);

}  // namespace intricacy
