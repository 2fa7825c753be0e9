#pragma once

#include <string>
#include <utility>
#include <vector>

namespace intricacy {

/// Symmetric probability measure on [0,1]: finitely many atoms plus a
/// multiple of Lebesgue measure. Atoms are stored mirrored (x and 1-x).
class SymmetricMeasure {
 public:
  struct Atom {
    double location;
    double mass;
  };

  /// Mirrors one-sided atoms: (x, m) contributes mass m at x and mass m at
  /// 1-x (a single atom of mass m when x = 1/2). Adds `lebesgue_mass`.
  /// Throws InputError on negative mass, mass at 0 or 1, or total != 1 (1e-9).
  static SymmetricMeasure from_one_sided(const std::vector<Atom>& atoms, double lebesgue_mass);

  static SymmetricMeasure lebesgue() { return from_one_sided({}, 1.0); }
  /// (δ_x + δ_{1-x}) / 2.
  static SymmetricMeasure pair(double x) {
    return from_one_sided({{x, x == 0.5 ? 1.0 : 0.5}}, 0.0);
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  double lebesgue_mass() const { return lebesgue_; }
  double total_mass() const;

  /// ∫ x^k (1-x)^(n-k) dλ, evaluated in extended precision.
  long double moment(int n, int k) const;

 private:
  std::vector<Atom> atoms_;
  double lebesgue_ = 0.0;
};

/// Weights c_S^n depending only on (n, |S|). Immutable; the (n, k) table is
/// precomputed at construction up to the horizon.
class CoefficientSystem {
 public:
  enum class Kind { uniform, neural, p_symmetric, measure, table };

  static constexpr int kDefaultHorizon = 64;

  static CoefficientSystem uniform(int horizon = kDefaultHorizon);
  static CoefficientSystem neural(int horizon = kDefaultHorizon);
  static CoefficientSystem p_symmetric(double p, int horizon = kDefaultHorizon);
  static CoefficientSystem from_measure(const SymmetricMeasure& measure,
                                        int horizon = kDefaultHorizon);
  /// Convenience for from_measure(SymmetricMeasure::from_one_sided(...)).
  static CoefficientSystem from_measure(const std::vector<SymmetricMeasure::Atom>& one_sided_atoms,
                                        double lebesgue_mass, int horizon = kDefaultHorizon);
  /// Hand-built table, rows[n][k] for n = 0..rows.size()-1. Not validated
  /// at construction; use validate() to inspect it.
  static CoefficientSystem from_table(std::vector<std::vector<double>> rows);

  /// Parses `uniform` | `neural` | `psym:<p>` | `measure:<x1>=<m1>,...[;lebesgue=<m>]`.
  static CoefficientSystem parse(const std::string& spec, int horizon = kDefaultHorizon);

  Kind kind() const { return kind_; }
  int horizon() const { return horizon_; }
  /// Canonical spec string (round-trips through parse for built-in kinds).
  const std::string& spec() const { return spec_; }
  bool is_uniform() const { return kind_ == Kind::uniform; }

  /// c_S^n for any S with |S| = k. Throws InputError when k is out of
  /// range and CapExceeded when n exceeds the horizon.
  double weight(int n, int k) const;

 private:
  CoefficientSystem(Kind kind, int horizon, std::string spec);
  template <typename Fn>
  void fill(const Fn& exact);

  Kind kind_;
  int horizon_;
  std::string spec_;
  std::vector<std::vector<double>> table_;
};

struct ValidationRow {
  int n = 0;
  double sum_deviation = 0.0;   // |Σ_k C(n,k) c(n,k) - 1|
  double max_asymmetry = 0.0;   // max_k |c(n,k) - c(n,n-k)|
  bool has_negative = false;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  double tolerance = 1e-12;
  bool passed() const;
  double max_deviation() const;
};

ValidationReport validate(const CoefficientSystem& system, int n_max);

}  // namespace intricacy
