#include <doctest.h>

#include <cmath>

#include "intricacy/error.hpp"
#include "intricacy/oracle.hpp"
#include "intricacy/pressure.hpp"
#include "intricacy/reference.hpp"
#include "intricacy/topo.hpp"

using namespace intricacy;

TEST_CASE("weighted counts") {
  const auto full = Sft::from_adjacency(reference::full_shift(2));
  const auto gm = Sft::from_adjacency(reference::golden_mean());
  const Potential f{{0.0, 1.0}};
  const double e = std::exp(1.0);
  CHECK(weighted_count(full, Potential::zero(2), SubsetSpec::from_elements(3, {0, 1, 2})) == doctest::Approx(8));
  CHECK(weighted_count(full, f, SubsetSpec::from_elements(2, {0, 1})) == doctest::Approx((1 + e) * (1 + e)));
  CHECK(weighted_count(gm, f, SubsetSpec::from_elements(2, {0, 1})) == doctest::Approx(1 + 2 * e));
  CHECK(oracle::weighted_count(gm, f, SubsetSpec::from_elements(2, {0, 1})) == doctest::Approx(1 + 2 * e));
}

TEST_CASE("zero potential reproduces Asc bit for bit") {
  for (const auto& row : reference::topo_rows()) {
    const auto s = Sft::from_adjacency(row.adjacency);
    const auto u = CoefficientSystem::uniform();
    CHECK(asp_profile(s, Potential::zero(3), u, 10) == finite_profile(s, u, 10).asc);
  }
}

TEST_CASE("reference pressure rows") {
  for (const auto& row : reference::pressure_rows()) {
    const auto s = Sft::from_adjacency(row.adjacency);
    CHECK(std::abs(asp_profile(s, {row.f1}, CoefficientSystem::uniform(), 10) - row.asp_f1) <= 0.0005);
    CHECK(std::abs(asp_profile(s, {row.f2}, CoefficientSystem::uniform(), 10) - row.asp_f2) <= 0.0005);
  }
}

TEST_CASE("full shift large-n limit") {
  const auto full = Sft::from_adjacency(reference::full_shift(2));
  const Potential f{{0.0, 1.0}};
  // N(S) factorizes, so Asp_n = (1/2) log(1 + e) for every n
  CHECK(asp_profile(full, f, CoefficientSystem::uniform(), 20) == doctest::Approx(0.5 * std::log(1 + std::exp(1.0))).epsilon(1e-12));
}

TEST_CASE("classical pressure") {
  const auto full = Sft::from_adjacency(reference::full_shift(2));
  CHECK(classical_pressure(full, Potential::zero(2)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(classical_pressure(full, {{0.0, 1.0}}) == doctest::Approx(std::log(1 + std::exp(1.0))).epsilon(1e-12));
  const auto gm = Sft::from_adjacency(reference::golden_mean());
  CHECK(classical_pressure(gm, Potential::zero(2)) == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
}

TEST_CASE("monotone in the potential") {
  const auto s = Sft::from_adjacency(reference::topo_rows()[2].adjacency);
  const auto u = CoefficientSystem::uniform();
  CHECK(asp_profile(s, {{0, 0, 0.5}}, u, 8) <= asp_profile(s, {{0, 0.1, 0.5}}, u, 8));
}

TEST_CASE("potential from a map") {
  const auto f = Potential::from_map({{0, 0.0}, {1, -1.0}, {2, 1.5}}, 3);
  CHECK(f.values == std::vector<double>{0, -1, 1.5});
  CHECK_THROWS_AS(Potential::from_map({{2, 1.5}}, 3), InputError);
  CHECK_THROWS_AS(Potential::from_map({{0, 0.0}, {1, 0.0}, {3, 1.0}}, 3), InputError);
}
