#include <doctest.h>

#include <cmath>

#include "intricacy/coeffs.hpp"
#include "intricacy/error.hpp"

using namespace intricacy;

TEST_CASE("named systems evaluate their closed forms") {
  CHECK(CoefficientSystem::uniform().weight(3, 2) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(CoefficientSystem::neural().weight(2, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(CoefficientSystem::p_symmetric(0.3).weight(2, 0) == doctest::Approx(0.29).epsilon(1e-14));
}

TEST_CASE("measure-backed systems") {
  const auto half = CoefficientSystem::from_measure({{0.5, 1.0}}, 0.0);
  for (int n = 0; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) CHECK(half.weight(n, k) == doctest::Approx(std::ldexp(1.0, -n)).epsilon(1e-14));
  CHECK(half.weight(5, 3) == doctest::Approx(0.03125));

  const auto leb = CoefficientSystem::from_measure({}, 1.0);
  const auto neural = CoefficientSystem::neural();
  for (int n = 0; n <= 20; ++n)
    for (int k = 0; k <= n; ++k) CHECK(std::abs(leb.weight(n, k) - neural.weight(n, k)) <= 1e-12);

  const auto pair = CoefficientSystem::from_measure({{0.3, 0.5}}, 0.0);
  CHECK(pair.weight(2, 0) == doctest::Approx(0.29).epsilon(1e-14));
  const auto psym = CoefficientSystem::p_symmetric(0.3);
  for (int n = 0; n <= 20; ++n)
    for (int k = 0; k <= n; ++k) CHECK(std::abs(pair.weight(n, k) - psym.weight(n, k)) <= 1e-12);
}

TEST_CASE("measure mass must total one") {
  CHECK_THROWS_AS(CoefficientSystem::from_measure({{0.2, 0.2}}, 0.0), InputError);
  CHECK_THROWS_AS(CoefficientSystem::from_measure({{0.2, -0.5}}, 2.0), InputError);
}

TEST_CASE("validate") {
  const auto u = validate(CoefficientSystem::uniform(), 10);
  CHECK(u.passed());
  CHECK(u.max_deviation() <= 1e-15);
  CHECK(validate(CoefficientSystem::neural(), 10).passed());
  for (double p : {0.1, 0.3, 0.5}) CHECK(validate(CoefficientSystem::p_symmetric(p), 20).passed());

  std::vector<std::vector<double>> rows{{1.0}, {0.5, 0.5}, {0.25, 0.25, 0.25}, {0.1, 0.2, 0.1, 0.1}};
  const auto bad = validate(CoefficientSystem::from_table(rows), 3);
  CHECK_FALSE(bad.passed());
  CHECK(bad.rows.back().max_asymmetry == doctest::Approx(0.1));
}

TEST_CASE("coefficient strings") {
  CHECK(CoefficientSystem::parse("uniform").is_uniform());
  CHECK(CoefficientSystem::parse("neural").kind() == CoefficientSystem::Kind::neural);
  CHECK(CoefficientSystem::parse("psym:0.3").weight(2, 0) == doctest::Approx(0.29));
  CHECK_THROWS_AS(CoefficientSystem::parse("bogus"), InputError);
  CHECK_THROWS_AS(CoefficientSystem::parse("psym:abc"), InputError);
}

TEST_CASE("measure strings round trip") {
  const auto c = CoefficientSystem::parse("measure:0.3=0.5");
  CHECK(c.weight(2, 0) == doctest::Approx(0.29));
  const auto again = CoefficientSystem::parse(c.spec());
  for (int k = 0; k <= 9; ++k) CHECK(again.weight(9, k) == c.weight(9, k));
  const auto mixed = CoefficientSystem::parse("measure:0.5=0.5;lebesgue=0.5");
  CHECK(validate(mixed, 20).passed());
}
