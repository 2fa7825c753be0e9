#include <doctest.h>

#include <cmath>

#include "intricacy/error.hpp"
#include "intricacy/markov.hpp"
#include "intricacy/oracle.hpp"
#include "intricacy/reference.hpp"
#include "intricacy/sweep.hpp"

using namespace intricacy;

namespace {

const double kLog2 = std::log(2.0);

MarkovMeasure family(const std::string& name, std::vector<double> theta) {
  return MarkovFamily::builtin(name).build(theta);
}

MarkovMeasure bernoulli() { return family("full2-1step", {0.5, 0.5}); }

}  // namespace

TEST_CASE("stationary vectors") {
  CHECK(bernoulli().p()(0) == doctest::Approx(0.5));
  const auto m = family("full2-1step", {0.216, 0.0});
  CHECK(std::abs(m.p()(0) - 1.0 / (2 - 0.216)) <= 1e-4);
  CHECK(std::abs(m.p()(1) - 0.784 / (2 - 0.216)) <= 1e-4);
  const auto g = family("gms-2step", {0.618, 0.618});
  CHECK((g.p().transpose() * g.P() - g.p().transpose()).norm() <= 1e-12);
  CHECK(g.p().sum() == doctest::Approx(1.0));
  // two closed classes: no unique stationary vector
  CHECK_THROWS_AS(family("full2-1step", {1.0, 1.0}), InputError);
}

TEST_CASE("validation") {
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.4, 0.5, 0.5;
  CHECK_THROWS_AS(MarkovMeasure::one_step(bad), InputError);
  Eigen::MatrixXd P(2, 2);
  P << 0.5, 0.5, 0.5, 0.5;
  Eigen::VectorXd wrong(2);
  wrong << 0.9, 0.1;
  CHECK_THROWS_AS(MarkovMeasure::one_step(P, wrong), InputError);
  Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(3, 3);
  overlap << 0.5, 0.5, 0, 0.5, 0.5, 0, 1, 0, 0;  // 01 -> 01 does not overlap
  CHECK_THROWS_AS(MarkovMeasure::block_chain({"00", "01", "10"}, overlap), InputError);
}

TEST_CASE("entropy rates") {
  CHECK(std::abs(entropy_rate(bernoulli()) - 0.693) <= 0.0005);
  CHECK(std::abs(entropy_rate(family("gms-1step", {0.618})) - 0.481) <= 0.0005);
  Eigen::MatrixXd perm(3, 3);
  perm << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  CHECK(entropy_rate(MarkovMeasure::one_step(perm)) == 0.0);
}

TEST_CASE("gap conditional entropies") {
  for (int i = 1; i <= 5; ++i) CHECK(gap_conditional_entropy(bernoulli(), i) == doctest::Approx(kLog2));
  const auto g = family("gms-1step", {0.618});
  CHECK(gap_conditional_entropy(g, 1) == doctest::Approx(entropy_rate(g)).epsilon(1e-12));
  double s = 0;
  for (int i = 1; i <= 20; ++i) s += std::ldexp(gap_conditional_entropy(g, i), -i - 1);
  CHECK(std::abs(s - 0.266) <= 0.001);
}

TEST_CASE("series values") {
  const auto b = asc_series_markov(bernoulli(), 20);
  CHECK(std::abs(b.asc - 0.347) <= 0.0005);
  CHECK(std::abs(b.intricacy) <= 0.0005);
  const auto f = asc_series_markov(family("full2-1step", {0.905, 0.905}), 20);
  CHECK(std::abs(f.asc - 0.209) <= 0.001);
  CHECK(std::abs(f.intricacy - 0.104) <= 0.001);
  const auto g = asc_series_markov(family("gms-2step", {0.483, 0.569}), 20);
  CHECK(std::abs(g.asc - 0.272) <= 0.001);
  CHECK(std::abs(g.intricacy - 0.078) <= 0.001);
  for (double a : {0.1, 0.37, 0.8}) {
    const auto s = asc_series_markov(family("full2-1step", {a, 1 - a}), 30);
    CHECK(std::abs(s.intricacy) <= 2 * s.tail_bound + 1e-12);
  }
}

TEST_CASE("joint entropies") {
  CHECK(sampled_joint_entropy(bernoulli(), SubsetSpec::from_elements(9, {0, 3, 8})) == doctest::Approx(3 * kLog2));
  const auto g = family("gms-1step", {0.618});
  const auto s02 = SubsetSpec::from_elements(3, {0, 2});
  CHECK(std::abs(sampled_joint_entropy(g, s02) - oracle::joint_entropy(g, s02)) <= 1e-10);
  const auto g2 = family("gms-2step", {0.618, 0.618});
  const auto s012 = SubsetSpec::full(3);
  double direct = 0;
  for (const auto& w : std::vector<std::vector<int>>{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 0, 1}})
    direct -= xlogx(g2.cylinder_measure(w));
  CHECK(std::abs(sampled_joint_entropy(g2, s012) - direct) <= 1e-10);
  for (std::uint64_t m = 1; m < 256; m += 7)
    CHECK(std::abs(sampled_joint_entropy(g2, SubsetSpec(8, m)) - oracle::joint_entropy(g2, SubsetSpec(8, m))) <= 1e-10);
}

TEST_CASE("finite-n averages") {
  const auto g = family("gms-1step", {0.618});
  CHECK(std::abs(asc_finite(g, CoefficientSystem::uniform(), 6).asc - 0.266) <= 0.02);
  for (int n : {1, 5, 9}) CHECK(asc_finite(bernoulli(), CoefficientSystem::uniform(), n).asc == doctest::Approx(kLog2 / 2).epsilon(1e-13));
  // finite-n values approach the series from above at rate ~1/n
  const auto edge = family("full2-1step", {0.216, 0.0});
  const double limit = asc_series_markov(edge, 40).asc;
  const double a10 = asc_finite(edge, CoefficientSystem::uniform(), 10).asc;
  CHECK(std::abs(limit - 0.208) <= 0.0005);
  CHECK(a10 >= limit);
  CHECK(a10 - limit <= 0.02);
  CHECK(asc_finite(edge, CoefficientSystem::uniform(), 14).asc - limit < a10 - limit);
  const auto r = asc_finite(g, CoefficientSystem::uniform(), 8);
  CHECK(std::abs(r.intricacy - (2 * r.asc - r.entropy_n)) <= 1e-12);
  CHECK_THROWS_AS(asc_finite(g, CoefficientSystem::uniform(), 21), CapExceeded);
  CHECK_THROWS_AS(asc_finite(family("gms-2step", {0.5, 0.5}), CoefficientSystem::uniform(), 13), CapExceeded);
}

TEST_CASE("general weights") {
  const auto g = family("gms-1step", {0.618});
  CHECK(asc_lambda(g, SymmetricMeasure::pair(0.5), 20).value == doctest::Approx(asc_series_markov(g, 20).asc).epsilon(1e-12));
  CHECK(asc_lambda(bernoulli(), SymmetricMeasure::lebesgue(), 200).value == doctest::Approx(kLog2 / 2).epsilon(1e-4));
  double direct = 0;
  for (int i = 1; i <= 40; ++i) {
    double c = 0;
    for (double p : {0.3, 0.7}) c += 0.5 * p * p * std::pow(1 - p, i - 1);
    direct += c * gap_conditional_entropy(g, i);
  }
  CHECK(asc_lambda(g, SymmetricMeasure::pair(0.3), 40).value == doctest::Approx(direct).epsilon(1e-12));
  CHECK_THROWS_AS(asc_lambda(family("gms-2step", {0.5, 0.5}), SymmetricMeasure::lebesgue()), InputError);
}

TEST_CASE("Monte Carlo estimator") {
  const auto b = monte_carlo_asc(bernoulli(), 16, 2000, 42);
  CHECK(std::abs(b.mean - kLog2 / 2 * (1 + 1.0 / 32)) <= 3 * b.stderr_ + 1e-12);
  const auto g = family("gms-1step", {0.618});
  const auto e = monte_carlo_asc(g, 16, 5000, 7);
  CHECK(std::abs(e.mean - 0.266) <= 3 * e.stderr_ + 0.01);
  CHECK(std::abs(e.mean - oracle::monte_carlo_expectation(g, 16)) <= 4 * e.stderr_);
  const auto once = monte_carlo_asc(g, 16, 1, 99);
  CHECK(monte_carlo_asc(g, 16, 1, 99).mean == once.mean);
  CHECK(monte_carlo_asc(g, 16, 1000, 3, 1).mean == monte_carlo_asc(g, 16, 1000, 3, 4).mean);
  CHECK_THROWS_AS(monte_carlo_asc(g, 33, 10, 1), CapExceeded);
}

TEST_CASE("higher-block recoding") {
  const auto gm = Sft::from_adjacency(reference::golden_mean());
  const auto r = recode_higher_block({{"00", {0.483, 0.517}}, {"01", {1.0, 0.0}}, {"10", {0.569, 0.431}}}, gm);
  const auto g = family("gms-2step", {0.483, 0.569});
  CHECK((r.P() - g.P()).norm() <= 1e-12);

  const auto one = family("gms-1step", {0.618});
  const auto two = recode_higher_block({{"00", {0.618, 0.382}}, {"01", {1.0, 0.0}}, {"10", {0.618, 0.382}}}, gm);
  for (const auto& w : std::vector<std::vector<int>>{{0, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 0, 1}})
    CHECK(std::abs(one.cylinder_measure(w) - two.cylinder_measure(w)) <= 1e-12);

  const auto full = Sft::from_adjacency(reference::full_shift(2));
  const std::vector<double> half{0.5, 0.5};
  const auto b = recode_higher_block({{"00", half}, {"01", half}, {"10", half}, {"11", half}}, full);
  CHECK(b.state_count() == 4);
  CHECK(entropy_rate(b) == doctest::Approx(kLog2));
  CHECK_THROWS_AS(recode_higher_block({{"00", {0.5, 0.5}}, {"01", {0.5, 0.5}}, {"10", {0.5, 0.5}}}, gm), InputError);
}

TEST_CASE("measure bounded by counts") {
  const auto gm = Sft::from_adjacency(reference::golden_mean());
  const auto g = family("gms-1step", {0.4});
  CHECK(g.supported_on(gm));
  CHECK_FALSE(bernoulli().supported_on(gm));
}
