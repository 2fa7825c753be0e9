#pragma once

// Published reference values (3-decimal rounding) used by the acceptance
// suite and for the provenance column of CLI output.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "intricacy/sweep.hpp"

namespace intricacy::reference {

struct TopoRow {
  std::string tag;
  Eigen::MatrixXi adjacency;
  double entropy;
  double entropy_10;
  double asc_10;
  double int_10;
};

struct PressureRow {
  std::string tag;
  Eigen::MatrixXi adjacency;
  std::vector<double> f1;
  std::vector<double> f2;
  double asp_f1;
  double asp_f2;
};

struct MarkovRow {
  std::string tag;
  std::string family;
  std::vector<double> theta;
  double h;
  double asc;
  double intricacy;
};

struct MaximizerRow {
  std::string tag;
  std::string family;
  Objective objective;
  std::vector<double> theta;
  double value;
  bool global;  // false for a reported local maximum
};

const std::vector<TopoRow>& topo_rows();
const std::vector<PressureRow>& pressure_rows();
const std::vector<MarkovRow>& markov_rows();
const std::vector<MaximizerRow>& maximizer_rows();

Eigen::MatrixXi full_shift(int r);
Eigen::MatrixXi golden_mean();

/// Tag of the reference row matching this shift (same essential adjacency).
std::optional<std::string> topo_tag(const Eigen::MatrixXi& adjacency);
std::optional<std::string> markov_tag(const std::string& family, const std::vector<double>& theta);

}  // namespace intricacy::reference
