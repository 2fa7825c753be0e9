#include "intricacy/reference.hpp"

#include <cmath>

namespace intricacy::reference {

namespace {

Eigen::MatrixXi m3(std::initializer_list<int> v) {
  Eigen::MatrixXi m(3, 3);
  auto it = v.begin();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = *it++;
  return m;
}

bool same_theta(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-9) return false;
  }
  return true;
}

}  // namespace

Eigen::MatrixXi full_shift(int r) { return Eigen::MatrixXi::Ones(r, r); }

Eigen::MatrixXi golden_mean() {
  Eigen::MatrixXi m(2, 2);
  m << 1, 1, 1, 0;
  return m;
}

const std::vector<TopoRow>& topo_rows() {
  static const std::vector<TopoRow> rows{
      {"ref:equal-counts/I", m3({1, 1, 0, 0, 0, 1, 1, 1, 0}), 0.481, 0.545, 0.399, 0.254},
      {"ref:equal-counts/II", m3({0, 1, 1, 1, 0, 1, 1, 0, 0}), 0.481, 0.545, 0.377, 0.208},
      {"ref:positive-square/1", m3({0, 1, 1, 1, 1, 1, 1, 0, 1}), 0.810, 0.844, 0.490, 0.136},
      {"ref:positive-square/2", m3({1, 1, 1, 1, 1, 0, 1, 0, 0}), 0.810, 0.830, 0.472, 0.114},
      {"ref:equal-entropy/1", m3({1, 1, 0, 0, 1, 1, 1, 0, 1}), 0.693, 0.734, 0.458, 0.182},
      {"ref:equal-entropy/2", m3({0, 1, 1, 1, 0, 1, 1, 1, 0}), 0.693, 0.734, 0.458, 0.182},
      {"ref:equal-entropy/3", m3({1, 1, 0, 0, 0, 1, 1, 1, 1}), 0.693, 0.734, 0.458, 0.182},
      {"ref:equal-entropy/4", m3({1, 1, 0, 0, 1, 1, 1, 1, 0}), 0.693, 0.734, 0.458, 0.182},
      {"ref:equal-entropy/5", m3({0, 1, 1, 1, 0, 1, 1, 0, 1}), 0.693, 0.734, 0.446, 0.158},
      {"ref:equal-entropy/6", m3({0, 1, 1, 1, 1, 1, 1, 0, 0}), 0.693, 0.734, 0.446, 0.158},
      {"ref:equal-entropy/7", m3({1, 1, 1, 1, 0, 0, 1, 0, 0}), 0.693, 0.722, 0.440, 0.158},
  };
  return rows;
}

const std::vector<PressureRow>& pressure_rows() {
  static const std::vector<PressureRow> rows{
      {"ref:pressure/1", m3({0, 1, 1, 1, 0, 1, 1, 1, 0}), {0, 0, 1}, {0, 1, 0}, 0.660, 0.660},
      {"ref:pressure/2", m3({1, 1, 0, 0, 0, 1, 1, 1, 1}), {0, 0, 1}, {0, 1, 0}, 0.722, 0.633},
  };
  return rows;
}

const std::vector<MarkovRow>& markov_rows() {
  static const std::vector<MarkovRow> rows{
      {"ref:markov-full2/1", "full2-1step", {0.5, 0.5}, 0.693, 0.347, 0.0},
      {"ref:markov-full2/2", "full2-1step", {0.216, 0.0}, 0.292, 0.208, 0.124},
      {"ref:markov-full2/3", "full2-1step", {0.0, 0.216}, 0.292, 0.208, 0.124},
      {"ref:markov-full2/4", "full2-1step", {0.905, 0.905}, 0.315, 0.209, 0.104},
      {"ref:markov-gms1/1", "gms-1step", {0.618}, 0.481, 0.266, 0.051},
      {"ref:markov-gms1/2", "gms-1step", {0.533}, 0.471, 0.271, 0.071},
      {"ref:markov-gms1/3", "gms-1step", {0.216}, 0.292, 0.208, 0.124},
      {"ref:markov-gms2/1", "gms-2step", {0.618, 0.618}, 0.481, 0.266, 0.051},
      {"ref:markov-gms2/2", "gms-2step", {0.483, 0.569}, 0.466, 0.272, 0.078},
      {"ref:markov-gms2/3", "gms-2step", {0.0, 0.275}, 0.344, 0.221, 0.167},
  };
  return rows;
}

const std::vector<MaximizerRow>& maximizer_rows() {
  static const std::vector<MaximizerRow> rows{
      {"ref:markov-full2/1", "full2-1step", Objective::h, {0.5, 0.5}, 0.693, true},
      {"ref:markov-full2/1", "full2-1step", Objective::asc, {0.5, 0.5}, 0.347, true},
      {"ref:markov-full2/2", "full2-1step", Objective::intricacy, {0.216, 0.0}, 0.124, true},
      {"ref:markov-full2/3", "full2-1step", Objective::intricacy, {0.0, 0.216}, 0.124, true},
      {"ref:markov-full2/4", "full2-1step", Objective::intricacy, {0.905, 0.905}, 0.104, false},
      {"ref:markov-gms1/1", "gms-1step", Objective::h, {0.618}, 0.481, true},
      {"ref:markov-gms1/2", "gms-1step", Objective::asc, {0.533}, 0.271, true},
      {"ref:markov-gms1/3", "gms-1step", Objective::intricacy, {0.216}, 0.124, true},
      {"ref:markov-gms2/1", "gms-2step", Objective::h, {0.618, 0.618}, 0.481, true},
      {"ref:markov-gms2/2", "gms-2step", Objective::asc, {0.483, 0.569}, 0.272, true},
      {"ref:markov-gms2/3", "gms-2step", Objective::intricacy, {0.0, 0.275}, 0.167, true},
  };
  return rows;
}

std::optional<std::string> topo_tag(const Eigen::MatrixXi& adjacency) {
  for (const auto& row : topo_rows()) {
    if (row.adjacency.rows() == adjacency.rows() && row.adjacency == adjacency) return row.tag;
  }
  return std::nullopt;
}

std::optional<std::string> markov_tag(const std::string& family, const std::vector<double>& theta) {
  for (const auto& row : markov_rows()) {
    if (row.family == family && same_theta(row.theta, theta)) return row.tag;
  }
  return std::nullopt;
}

}  // namespace intricacy::reference
