#include "intricacy/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "intricacy/error.hpp"
#include "intricacy/numeric.hpp"

namespace intricacy {

namespace {

constexpr double kRestTolerance = 1e-12;

std::vector<double> axis(double lo, double hi, double step) {
  std::vector<double> v;
  for (long i = 0;; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    if (x > hi + 1e-12) break;
    v.push_back(std::min(x, hi));
  }
  if (v.back() < hi - 1e-12) v.push_back(hi);
  return v;
}

GridPoint evaluate(const MarkovFamily& family, std::span<const double> theta, int terms) {
  const auto m = family.build(theta);
  const auto s = asc_series_markov(m, terms);
  return {{theta.begin(), theta.end()}, s.entropy, s.asc, s.intricacy};
}

bool near_boundary(const MarkovFamily& family, const std::vector<double>& theta, double step) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const auto [lo, hi] = family.box()[i];
    if (theta[i] - lo <= step + 1e-12 || hi - theta[i] <= step + 1e-12) return true;
  }
  return false;
}

}  // namespace

Objective parse_objective(const std::string& name) {
  if (name == "h") return Objective::h;
  if (name == "asc") return Objective::asc;
  if (name == "int") return Objective::intricacy;
  throw InputError("unknown objective '" + name + "' (expected h | asc | int)");
}

std::string to_string(Objective objective) {
  switch (objective) {
    case Objective::h:
      return "h";
    case Objective::asc:
      return "asc";
    case Objective::intricacy:
      return "int";
  }
  return "";
}

double GridPoint::value(Objective objective) const {
  switch (objective) {
    case Objective::h:
      return h;
    case Objective::asc:
      return asc;
    case Objective::intricacy:
      return intricacy;
  }
  return 0.0;
}

const std::vector<std::string>& MarkovFamily::builtin_names() {
  static const std::vector<std::string> names{"full2-1step", "gms-1step", "gms-2step"};
  return names;
}

MarkovFamily MarkovFamily::builtin(const std::string& name) {
  const Rest rest;
  if (name == "full2-1step")
    return from_template(name, {"0", "1"}, {"P00", "P11"}, {{0, rest}, {rest, 1}});
  if (name == "gms-1step")
    return from_template(name, {"0", "1"}, {"P00"}, {{0, rest}, {1.0, 0.0}});
  if (name == "gms-2step")
    return from_template(name, {"00", "01", "10"}, {"P000", "P100"},
                         {{0, rest, 0.0}, {0.0, 0.0, 1.0}, {1, rest, 0.0}});
  throw InputError("unknown family '" + name + "' (expected full2-1step | gms-1step | gms-2step)");
}

MarkovFamily MarkovFamily::from_template(std::string name, std::vector<std::string> states,
                                         std::vector<std::string> parameters,
                                         std::vector<std::vector<Entry>> matrix,
                                         std::vector<std::pair<double, double>> box) {
  if (parameters.empty() || parameters.size() > 2)
    throw InputError("families need one or two parameters");
  if (matrix.size() != states.size()) throw InputError("template needs one row per state");
  for (const auto& row : matrix) {
    if (row.size() != states.size()) throw InputError("template rows must have one entry per state");
    int rests = 0;
    for (const auto& e : row) {
      if (std::holds_alternative<Rest>(e)) ++rests;
      if (const int* k = std::get_if<int>(&e); k && (*k < 0 || *k >= static_cast<int>(parameters.size())))
        throw InputError("template references an unknown parameter");
    }
    if (rests > 1) throw InputError("at most one remainder entry per row");
  }
  if (box.empty()) box.assign(parameters.size(), {0.0, 1.0});
  if (box.size() != parameters.size()) throw InputError("box needs one interval per parameter");
  for (const auto& [lo, hi] : box) {
    if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) throw InputError("parameter intervals must lie in [0,1]");
  }
  MarkovFamily f;
  f.name_ = std::move(name);
  f.states_ = std::move(states);
  f.parameters_ = std::move(parameters);
  f.matrix_ = std::move(matrix);
  f.box_ = std::move(box);
  return f;
}

MarkovMeasure MarkovFamily::build(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != dimension())
    throw InputError("family '" + name_ + "' takes " + std::to_string(dimension()) + " parameter(s)");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!(theta[i] >= box_[i].first && theta[i] <= box_[i].second))
      throw InputError("parameter " + parameters_[i] + " = " + format_sig(theta[i]) + " outside its interval");
  }
  const auto n = static_cast<Eigen::Index>(states_.size());
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    double used = 0.0;
    Eigen::Index rest_col = -1;
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& e = matrix_[r][c];
      if (std::holds_alternative<Rest>(e)) {
        rest_col = c;
        continue;
      }
      P(r, c) = std::holds_alternative<double>(e) ? std::get<double>(e) : theta[std::get<int>(e)];
      used += P(r, c);
    }
    if (rest_col >= 0) {
      if (used > 1.0 + kRestTolerance) throw InputError("template row " + std::to_string(r) + " exceeds 1");
      P(r, rest_col) = std::max(0.0, 1.0 - used);
    }
  }
  return MarkovMeasure::block_chain(states_, P);
}

SweepResult scan(const MarkovFamily& family, Objective objective, double step, int terms,
                 int threads) {
  if (!(step > 0.0 && step <= 0.1)) throw InputError("grid step must lie in (0, 0.1]");
  if (terms < 10) throw InputError("series needs at least 10 terms");
  std::vector<std::vector<double>> axes;
  for (const auto& [lo, hi] : family.box()) axes.push_back(axis(lo, hi, step));
  std::vector<std::size_t> shape;
  std::size_t total = 1;
  for (const auto& a : axes) {
    shape.push_back(a.size());
    total *= a.size();
  }

  std::vector<std::optional<GridPoint>> points(total);
  std::vector<std::string> errors(total);
  auto theta_at = [&](std::size_t index) {
    std::vector<double> theta(axes.size());
    for (std::size_t d = axes.size(); d-- > 0;) {
      theta[d] = axes[d][index % shape[d]];
      index /= shape[d];
    }
    return theta;
  };
  parallel_for(total, threads, [&](std::size_t i) {
    const auto theta = theta_at(i);
    try {
      points[i] = evaluate(family, theta, terms);
    } catch (const InputError& e) {
      errors[i] = e.what();
    }
  });

  SweepResult result;
  result.objective = objective;
  result.step = step;
  result.terms = terms;
  std::vector<long> position(total, -1);
  for (std::size_t i = 0; i < total; ++i) {
    if (points[i]) {
      position[i] = static_cast<long>(result.grid.size());
      result.grid.push_back(*points[i]);
    } else {
      result.skipped.push_back({theta_at(i), errors[i]});
    }
  }
  if (result.grid.empty()) throw InputError("every grid point failed to build");

  // Strict local maxima over the axis-aligned neighbourhood.
  std::vector<std::size_t> stride(shape.size(), 1);
  for (std::size_t d = shape.size() - 1; d-- > 0;) stride[d] = stride[d + 1] * shape[d + 1];
  for (std::size_t i = 0; i < total; ++i) {
    if (!points[i]) continue;
    const double v = points[i]->value(objective);
    bool strict = true;
    std::size_t rest = i;
    for (std::size_t d = 0; d < shape.size() && strict; ++d) {
      const std::size_t coord = (rest / stride[d]) % shape[d];
      for (int dir : {-1, 1}) {
        if ((dir < 0 && coord == 0) || (dir > 0 && coord + 1 == shape[d])) continue;
        const std::size_t j = dir < 0 ? i - stride[d] : i + stride[d];
        if (points[j] && !(points[j]->value(objective) < v)) strict = false;
      }
    }
    if (strict) result.grid_maxima.push_back(static_cast<std::size_t>(position[i]));
  }

  const auto top = std::max_element(result.grid.begin(), result.grid.end(),
                                    [&](const GridPoint& a, const GridPoint& b) {
                                      return a.value(objective) < b.value(objective);
                                    });
  result.best.theta = top->theta;
  result.best.value = top->value(objective);
  result.best.boundary = near_boundary(family, top->theta, step);
  return result;
}

Maximum maximize(const MarkovFamily& family, Objective objective, std::span<const double> start,
                 int terms, double initial_step) {
  const int d = family.dimension();
  if (static_cast<int>(start.size()) != d) throw InputError("start point has the wrong dimension");
  const auto& box = family.box();
  auto clamp = [&](std::vector<double> x) {
    for (int i = 0; i < d; ++i) x[i] = std::clamp(x[i], box[i].first, box[i].second);
    return x;
  };
  auto f = [&](const std::vector<double>& x) {
    try {
      return evaluate(family, x, terms).value(objective);
    } catch (const InputError&) {
      return -std::numeric_limits<double>::infinity();
    }
  };

  std::vector<std::vector<double>> simplex{clamp({start.begin(), start.end()})};
  for (int i = 0; i < d; ++i) {
    auto x = simplex[0];
    x[i] += x[i] + initial_step <= box[i].second ? initial_step : -initial_step;
    simplex.push_back(clamp(x));
  }
  std::vector<double> values;
  for (const auto& x : simplex) values.push_back(f(x));

  Maximum out;
  out.converged = false;
  auto diameter = [&] {
    double best = 0.0;
    for (std::size_t a = 0; a < simplex.size(); ++a)
      for (std::size_t b = a + 1; b < simplex.size(); ++b) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += (simplex[a][i] - simplex[b][i]) * (simplex[a][i] - simplex[b][i]);
        best = std::max(best, std::sqrt(s));
      }
    return best;
  };

  for (int it = 0; it < 500; ++it) {
    std::vector<std::size_t> order(simplex.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    {
      std::vector<std::vector<double>> s2;
      std::vector<double> v2;
      for (auto k : order) {
        s2.push_back(simplex[k]);
        v2.push_back(values[k]);
      }
      simplex.swap(s2);
      values.swap(v2);
    }
    out.iterations = it;
    if (diameter() < 1e-5) {
      out.converged = true;
      break;
    }
    const std::size_t worst = simplex.size() - 1;
    std::vector<double> centroid(d, 0.0);
    for (std::size_t k = 0; k < worst; ++k)
      for (int i = 0; i < d; ++i) centroid[i] += simplex[k][i] / static_cast<double>(worst);
    auto along = [&](double t) {
      std::vector<double> x(d);
      for (int i = 0; i < d; ++i) x[i] = centroid[i] + t * (simplex[worst][i] - centroid[i]);
      return clamp(x);
    };

    const auto reflected = along(-1.0);
    const double fr = f(reflected);
    if (fr > values[0]) {
      const auto expanded = along(-2.0);
      const double fe = f(expanded);
      if (fe > fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr > values[worst - 1]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const auto contracted = fr > values[worst] ? along(-0.5) : along(0.5);
    const double fc = f(contracted);
    if (fc > std::max(fr, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (std::size_t k = 1; k < simplex.size(); ++k) {
      for (int i = 0; i < d; ++i) simplex[k][i] = simplex[0][i] + 0.5 * (simplex[k][i] - simplex[0][i]);
      values[k] = f(simplex[k]);
    }
  }
  const auto best = std::max_element(values.begin(), values.end()) - values.begin();
  out.theta = simplex[best];
  out.value = values[best];
  out.boundary = near_boundary(family, out.theta, initial_step);
  if (!out.converged) warn("simplex refinement stopped at the iteration cap");
  return out;
}

SweepResult sweep(const MarkovFamily& family, Objective objective, double step, int terms,
                  int threads) {
  SweepResult result = scan(family, objective, step, terms, threads);
  std::vector<Maximum> refined(result.grid_maxima.size());
  parallel_for(refined.size(), threads, [&](std::size_t i) {
    const auto& seed = result.grid[result.grid_maxima[i]];
    refined[i] = maximize(family, objective, seed.theta, terms, step);
    refined[i].boundary = near_boundary(family, refined[i].theta, step);
  });
  result.local_maxima = refined;
  for (const auto& m : refined) {
    if (m.value > result.best.value) result.best = m;
  }
  return result;
}

}  // namespace intricacy
