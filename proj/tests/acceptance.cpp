// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "intricacy/checks.hpp"
#include "intricacy/markov.hpp"
#include "intricacy/numeric.hpp"
#include "intricacy/pressure.hpp"
#include "intricacy/reference.hpp"
#include "intricacy/sweep.hpp"
#include "intricacy/topo.hpp"

using namespace intricacy;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string f6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

Outcome topo_rows(std::size_t first, std::size_t last, double budget) {
  Outcome o;
  const auto t0 = Clock::now();
  const auto u = CoefficientSystem::uniform();
  const auto& rows = reference::topo_rows();
  for (std::size_t i = first; i < last; ++i) {
    const auto& row = rows[i];
    const auto sft = Sft::from_adjacency(row.adjacency);
    const auto p = finite_profile(sft, u, 10);
    const double h = topological_entropy(sft);
    const std::pair<const char*, std::pair<double, double>> cells[] = {
        {"entropy", {h, row.entropy}},
        {"H(10)", {p.entropy_n, row.entropy_10}},
        {"Asc(10)", {p.asc, row.asc_10}},
        {"Int(10)", {p.intricacy, row.int_10}}};
    for (const auto& [name, v] : cells)
      o.require(std::abs(v.first - v.second) <= 0.0005 + 1e-12,
                row.tag + " " + name + " " + f6(v.first) + " vs " + format_fixed3(v.second));
  }
  const double t = seconds_since(t0);
  o.require(t < budget, "runtime " + f6(t) + " s");
  if (o.pass) o.detail = std::to_string(last - first) + " rows within 0.0005, " + f6(t) + " s";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto S = SubsetSpec::from_elements(4, {0, 1, 3});
  const auto& rows = reference::topo_rows();
  const auto a = count_words_at(Sft::from_adjacency(rows[0].adjacency), S);
  const auto b = count_words_at(Sft::from_adjacency(rows[1].adjacency), S);
  o.require(a == 13, "SFT I gives " + to_string(a));
  o.require(b == 11, "SFT II gives " + to_string(b));
  if (o.pass) o.detail = "N({0,1,3}) = 13 and 11";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto full = Sft::from_adjacency(reference::full_shift(2));
  const double a = asc_series(full, 40).value;
  const double i = int_series(full, 40).value;
  o.require(std::abs(a - std::log(2.0) / 2) <= 1e-6, "Asc series " + f6(a));
  o.require(std::abs(i) <= 1e-6, "Int series " + f6(i));
  struct Case {
    int r;
    std::vector<double> f;
  };
  const Case cases[] = {{2, {0.0, 1.0}}, {3, {0.0, 0.0, 1.0}}, {3, {0.5, -1.0, 2.0}}};
  double worst = 0.0;
  for (const auto& c : cases) {
    double z = 0.0;
    for (double v : c.f) z += std::exp(v);
    const double closed = 0.5 * std::log(z);
    const double asp = asp_profile(Sft::from_adjacency(reference::full_shift(c.r)), {c.f}, CoefficientSystem::uniform(), 14);
    worst = std::max(worst, std::abs(asp - closed));
    o.require(std::abs(asp - closed) <= 1e-6, "Asp " + f6(asp) + " vs closed form " + f6(closed));
  }
  if (o.pass) o.detail = "series within 1e-6; Asp vs (1/2)log sum e^f worst error " + format_sig(worst, 3);
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (const auto& row : reference::pressure_rows()) {
    const auto sft = Sft::from_adjacency(row.adjacency);
    const double a1 = asp_profile(sft, {row.f1}, CoefficientSystem::uniform(), 10);
    const double a2 = asp_profile(sft, {row.f2}, CoefficientSystem::uniform(), 10);
    o.require(std::abs(a1 - row.asp_f1) <= 0.0005 + 1e-12, row.tag + " f1 " + f6(a1));
    o.require(std::abs(a2 - row.asp_f2) <= 0.0005 + 1e-12, row.tag + " f2 " + f6(a2));
  }
  if (o.pass) o.detail = "4 values within 0.0005";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto t0 = Clock::now();
  int good = 0;
  for (const auto& row : reference::markov_rows()) {
    const auto s = asc_series_markov(MarkovFamily::builtin(row.family).build(row.theta), 20);
    const bool ok = std::abs(s.entropy - row.h) <= 0.0015 && std::abs(s.asc - row.asc) <= 0.0015 &&
                    std::abs(s.intricacy - row.intricacy) <= 0.0015;
    good += ok;
    o.require(ok, row.tag + " got " + format_fixed3(s.entropy) + "/" + format_fixed3(s.asc) + "/" +
                      format_fixed3(s.intricacy) + " vs " + format_fixed3(row.h) + "/" + format_fixed3(row.asc) +
                      "/" + format_fixed3(row.intricacy));
  }
  const double t = seconds_since(t0);
  o.require(t < 10.0, "runtime " + f6(t) + " s");
  o.detail = std::to_string(good) + "/" + std::to_string(reference::markov_rows().size()) + " rows" +
             (o.pass ? " within 0.0015" : ": " + o.detail);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  std::map<std::pair<std::string, Objective>, SweepResult> runs;
  int good = 0;
  for (const auto& row : reference::maximizer_rows()) {
    const auto key = std::make_pair(row.family, row.objective);
    if (!runs.count(key)) runs.emplace(key, sweep(MarkovFamily::builtin(row.family), row.objective, 0.005));
    const auto& r = runs.at(key);
    bool found = false;
    for (const auto& m : r.local_maxima) {
      bool close = std::abs(m.value - row.value) <= 0.0015;
      for (std::size_t i = 0; i < m.theta.size(); ++i) close = close && std::abs(m.theta[i] - row.theta[i]) <= 0.01;
      if (row.global) close = close && m.value >= r.best.value - 1e-9;
      found = found || close;
    }
    good += found;
    std::string best = "(";
    for (std::size_t i = 0; i < r.best.theta.size(); ++i) best += (i ? ", " : "") + format_fixed3(r.best.theta[i]);
    best += ") = " + format_fixed3(r.best.value);
    o.require(found, row.tag + " " + to_string(row.objective) + " not recovered, search best " + best);
  }
  const double t = seconds_since(t0);
  o.require(t < 180.0, "runtime " + f6(t) + " s");
  o.detail = std::to_string(good) + "/" + std::to_string(reference::maximizer_rows().size()) + " maximizers, " +
             f6(t) + " s" + (o.pass ? "" : ": " + o.detail);
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto report = run_checks("all", 10);
  long props = 0;
  for (const auto& r : report.results) {
    ++props;
    o.require(r.ok(), r.suite + "/" + r.property + " " + std::to_string(r.passed) + "/" + std::to_string(r.total) +
                          " first failure " + r.first_failure);
  }
  if (o.pass) o.detail = std::to_string(props) + " properties pass";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const std::pair<const char*, std::vector<double>> chains[] = {{"full2-1step", {0.5, 0.5}}, {"gms-1step", {0.618}}};
  for (const auto& [family, theta] : chains) {
    const auto m = MarkovFamily::builtin(family).build(theta);
    const double series = asc_series_markov(m, 20).asc;
    const auto a = monte_carlo_asc(m, 16, 5000, 20261017, 0);
    const auto b = monte_carlo_asc(m, 16, 5000, 20261017, 1);
    const double slack = 3 * a.stderr_ + 0.01;
    o.require(std::abs(a.mean - series) <= slack,
              std::string(family) + " mean " + f6(a.mean) + " vs " + f6(series) + " (allowed " + f6(slack) + ")");
    o.require(a.mean == b.mean && a.stderr_ == b.stderr_, std::string(family) + " not reproducible");
    o.detail += std::string(o.detail.empty() ? "" : "; ") + family + " " + f6(a.mean) + " +- " +
                format_sig(a.stderr_, 3) + " vs " + f6(series);
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  const std::pair<const char*, Eigen::MatrixXi> shifts[] = {{"full-2", reference::full_shift(2)},
                                                           {"golden-mean", reference::golden_mean()}};
  for (const auto& [name, adjacency] : shifts) {
    const auto sft = Sft::from_adjacency(adjacency);
    const double h = topological_entropy(sft);
    double previous = -1.0;
    std::string values;
    for (int k = 0; k <= 3; ++k) {
      ProfileOptions options;
      options.block_k = k;
      const double a = finite_profile(sft, CoefficientSystem::uniform(), 14, options).asc;
      o.require(a >= previous - 1e-12, std::string(name) + " decreases at k=" + std::to_string(k));
      previous = a;
      values += (k ? "," : "") + format_fixed3(a);
    }
    o.require(h - previous <= 0.12 * h, std::string(name) + " gap " + f6(h - previous));
    o.detail += std::string(o.detail.empty() ? "" : "; ") + name + " Asc_k=" + values + " h=" + format_fixed3(h);
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"equal-counts shift tables", [] { return topo_rows(0, 2, 5.0); }},
      {"positive-square and equal-entropy tables", [] { return topo_rows(2, 11, 30.0); }},
      {"word-count spot check", criterion3},
      {"closed forms", criterion4},
      {"average sample pressure table", criterion5},
      {"Markov tables", criterion6},
      {"maximizer reproduction", criterion7},
      {"property suites", criterion8},
      {"Monte Carlo estimator", criterion9},
      {"block-cover refinement", criterion10},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
