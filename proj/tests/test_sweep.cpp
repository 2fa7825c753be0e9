#include <doctest.h>

#include <cmath>

#include "intricacy/error.hpp"
#include "intricacy/sweep.hpp"

using namespace intricacy;

TEST_CASE("objective names") {
  CHECK(parse_objective("asc") == Objective::asc);
  CHECK(parse_objective("int") == Objective::intricacy);
  CHECK(to_string(Objective::h) == "h");
  CHECK_THROWS_AS(parse_objective("max"), InputError);
}

TEST_CASE("families") {
  const auto f = MarkovFamily::builtin("full2-1step");
  CHECK(f.dimension() == 2);
  CHECK_THROWS_AS(f.build(std::vector<double>{1.2, 0.5}), InputError);
  CHECK_THROWS_AS(f.build(std::vector<double>{0.5}), InputError);
  CHECK_THROWS_AS(MarkovFamily::builtin("nope"), InputError);
  CHECK(MarkovFamily::builtin_names().size() == 3);
}

TEST_CASE("local refinement") {
  const auto g1 = MarkovFamily::builtin("gms-1step");
  const auto a = maximize(g1, Objective::asc, std::vector<double>{0.5});
  CHECK(std::abs(a.theta[0] - 0.533) <= 0.002);
  CHECK(std::abs(a.value - 0.271) <= 0.001);
  const auto h = maximize(g1, Objective::h, std::vector<double>{0.5});
  CHECK(std::abs(h.theta[0] - 0.618) <= 0.002);
  CHECK(std::abs(h.value - 0.481) <= 0.001);
  const auto g2 = maximize(MarkovFamily::builtin("gms-2step"), Objective::asc, std::vector<double>{0.5, 0.5});
  CHECK(std::abs(g2.theta[0] - 0.483) <= 0.005);
  CHECK(std::abs(g2.theta[1] - 0.569) <= 0.005);
  CHECK(std::abs(g2.value - 0.272) <= 0.001);
}

TEST_CASE("scan surface on the full shift") {
  const auto f = MarkovFamily::builtin("full2-1step");
  const auto s = scan(f, Objective::asc, 0.05);
  CHECK(s.grid.size() + s.skipped.size() == 21 * 21);
  CHECK(s.grid_maxima.size() == 1);
  const auto& top = s.grid[s.grid_maxima[0]];
  CHECK(top.theta[0] == doctest::Approx(0.5));
  CHECK(top.theta[1] == doctest::Approx(0.5));
  CHECK_THROWS_AS(scan(f, Objective::asc, 0.2), InputError);
  CHECK_THROWS_AS(scan(f, Objective::asc, 0.05, 5), InputError);
}

TEST_CASE("sweep finds the boundary intricacy maxima") {
  const auto r = sweep(MarkovFamily::builtin("full2-1step"), Objective::intricacy, 0.02);
  CHECK(std::abs(r.best.value - 0.124) <= 0.001);
  CHECK(r.best.boundary);
  bool interior = false;
  for (const auto& m : r.local_maxima)
    interior = interior || (std::abs(m.theta[0] - 0.905) <= 0.01 && std::abs(m.theta[1] - 0.905) <= 0.01);
  CHECK(interior);
}

TEST_CASE("custom templates") {
  using E = MarkovFamily::Entry;
  const auto f = MarkovFamily::from_template("coin", {"0", "1"}, {"a"},
                                             {{E{0}, E{MarkovFamily::Rest{}}}, {E{0}, E{MarkovFamily::Rest{}}}});
  const auto m = f.build(std::vector<double>{0.25});
  CHECK(m.P()(1, 1) == doctest::Approx(0.75));
  CHECK_THROWS_AS(MarkovFamily::from_template("x", {"0", "1"}, {"a"}, {{E{0.7}, E{0.7}}, {E{0.5}, E{0.5}}})
                      .build(std::vector<double>{0.1}),
                  InputError);
}
