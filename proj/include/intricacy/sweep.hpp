#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "intricacy/markov.hpp"

namespace intricacy {

enum class Objective { h, asc, intricacy };

Objective parse_objective(const std::string& name);
std::string to_string(Objective objective);

/// Parametrized Markov chains θ ↦ μ_θ described by a template matrix whose
/// entries are constants, parameters, or the row remainder.
class MarkovFamily {
 public:
  struct Rest {};
  using Entry = std::variant<double, int, Rest>;  // constant | parameter index | 1 - others

  /// `full2-1step` (P00, P11), `gms-1step` (P00), `gms-2step` (P000, P100).
  static MarkovFamily builtin(const std::string& name);
  static const std::vector<std::string>& builtin_names();

  static MarkovFamily from_template(std::string name, std::vector<std::string> states,
                                    std::vector<std::string> parameters,
                                    std::vector<std::vector<Entry>> matrix,
                                    std::vector<std::pair<double, double>> box = {});

  const std::string& name() const { return name_; }
  int dimension() const { return static_cast<int>(parameters_.size()); }
  const std::vector<std::string>& parameter_names() const { return parameters_; }
  const std::vector<std::pair<double, double>>& box() const { return box_; }

  /// Throws InputError when θ leaves the box, a row cannot be completed, or
  /// the chain has no unique stationary vector.
  MarkovMeasure build(std::span<const double> theta) const;

 private:
  std::string name_;
  std::vector<std::string> states_;
  std::vector<std::string> parameters_;
  std::vector<std::vector<Entry>> matrix_;
  std::vector<std::pair<double, double>> box_;
};

struct GridPoint {
  std::vector<double> theta;
  double h = 0.0;
  double asc = 0.0;
  double intricacy = 0.0;

  double value(Objective objective) const;
};

struct SkippedPoint {
  std::vector<double> theta;
  std::string reason;
};

struct Maximum {
  std::vector<double> theta;
  double value = 0.0;
  bool boundary = false;
  int iterations = 0;
  bool converged = true;
};

struct SweepResult {
  Objective objective = Objective::asc;
  double step = 0.0;
  int terms = 0;
  std::vector<GridPoint> grid;  // row-major, last parameter fastest
  std::vector<SkippedPoint> skipped;
  std::vector<std::size_t> grid_maxima;  // indices of strict grid local maxima
  std::vector<Maximum> local_maxima;     // refined, one per grid maximum
  Maximum best;
};

/// Evaluates the series at every grid point of the box and collects the
/// strict local maxima of `objective` (neighbours differ in one coordinate
/// by one step; skipped points are ignored).
SweepResult scan(const MarkovFamily& family, Objective objective, double step, int terms = 20,
                 int threads = 0);

/// Nelder-Mead from `start`, clamped to the box; stops when the simplex
/// diameter is below 1e-5 or after 500 iterations (converged = false).
Maximum maximize(const MarkovFamily& family, Objective objective, std::span<const double> start,
                 int terms = 20, double initial_step = 0.02);

/// scan, then refine each grid maximum; best is the largest refined value.
SweepResult sweep(const MarkovFamily& family, Objective objective, double step, int terms = 20,
                  int threads = 0);

}  // namespace intricacy
