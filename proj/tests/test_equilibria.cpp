#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "geac/equilibria.hpp"
#include "geac/errors.hpp"
#include "geac/oscillator.hpp"

using namespace geac;

TEST_SUITE("equilibria") {

TEST_CASE("cubic benchmark A: three equilibria, classified") {
  const PolynomialOscillator m(4.42e-4, {0.2649, -0.0503, -0.04414});
  const EquilibriumSet eq = find_equilibria(m);
  REQUIRE(eq.all.size() == 3);
  CHECK(eq.all[0].location ==
        doctest::Approx(-3.0849332938077514).epsilon(1e-12));
  CHECK(eq.all[1].location == 0.0);
  CHECK(eq.all[2].location ==
        doctest::Approx(1.945377335493297).epsilon(1e-12));
  CHECK(eq.all[0].kind == EquilibriumKind::Uep);
  CHECK(eq.all[1].kind == EquilibriumKind::Sep);
  CHECK(eq.all[2].kind == EquilibriumKind::Uep);
  REQUIRE(eq.left_uep.has_value());
  REQUIRE(eq.right_uep.has_value());
  CHECK(eq.left_uep->location == eq.all[0].location);
  CHECK(eq.right_uep->location == eq.all[2].location);
  CHECK(eq.sep.location == 0.0);
  // residuals vanish and the slopes carry the right signs
  for (const Equilibrium& e : eq.all) {
    CHECK(std::abs(eval_f(m, e.location)) < 1e-13);
    CHECK(e.slope == doctest::Approx(eval_f_prime(m, e.location)));
  }
  CHECK(eq.right_uep->slope == doctest::Approx(-0.431948).epsilon(1e-4));
}

TEST_CASE("cubic benchmark B: the deeper-sag variant") {
  const PolynomialOscillator m(4.42e-4, {0.2649, -0.0603, -0.04414});
  const EquilibriumSet eq = find_equilibria(m);
  REQUIRE(eq.all.size() == 3);
  CHECK(eq.all[0].location ==
        doctest::Approx(-3.2262648756030883).epsilon(1e-12));
  CHECK(eq.all[2].location ==
        doctest::Approx(1.8601570369080271).epsilon(1e-12));
  // barriers, via the potential at the bounding UEPs
  CHECK(potential_energy(m, eq.all[0].location) ==
        doctest::Approx(0.8580688151969973).epsilon(1e-12));
  CHECK(potential_energy(m, eq.all[2].location) ==
        doctest::Approx(0.19680735666353663).epsilon(1e-12));
}

TEST_CASE("root completeness on factored random cubics") {
  // f(d) = a * d * (d - r_left) * (d - r_right) with r_left < 0 < r_right
  // has exactly these three roots; the solver must find them all.
  std::mt19937 rng(20240817u);
  std::uniform_real_distribution<double> mag(0.3, 4.0);
  std::uniform_real_distribution<double> amp(0.05, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double rl = -mag(rng);
    const double rr = mag(rng);
    // negative amplitude keeps a1 = a*rl*rr positive (rl*rr < 0)
    const double a = -amp(rng);
    // expand a*d*(d-rl)*(d-rr) = a*(rl*rr*d - (rl+rr)*d^2 + d^3)
    const std::vector<double> coeffs = {a * rl * rr, -a * (rl + rr), a};
    REQUIRE(coeffs[0] > 0.0);
    const PolynomialOscillator m(0.0, coeffs);
    const EquilibriumSet eq = find_equilibria(m);
    REQUIRE(eq.all.size() == 3);
    CHECK(eq.all[0].location == doctest::Approx(rl).epsilon(1e-9));
    CHECK(eq.all[1].location == 0.0);
    CHECK(eq.all[2].location == doctest::Approx(rr).epsilon(1e-9));
    CHECK(eq.all[0].kind == EquilibriumKind::Uep);
    CHECK(eq.all[2].kind == EquilibriumKind::Uep);
  }
}

TEST_CASE("one-sided landscape leaves the open side unbounded") {
  // f = d - d^2: roots 0 and 1, nothing to the left
  const PolynomialOscillator m(0.0, {1.0, -1.0});
  const EquilibriumSet eq = find_equilibria(m);
  REQUIRE(eq.all.size() == 2);
  CHECK(!eq.left_uep.has_value());
  REQUIRE(eq.right_uep.has_value());
  CHECK(eq.right_uep->location == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(escape_bound(eq) == doctest::Approx(10.0));
  CHECK(well_radius(eq) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(min_barrier_energy(m, eq) ==
        doctest::Approx(potential_energy(m, 1.0)).epsilon(1e-12));
}

TEST_CASE("pure linear oscillator has no UEP at all") {
  const PolynomialOscillator m(0.0, {1.0});
  const EquilibriumSet eq = find_equilibria(m);
  REQUIRE(eq.all.size() == 1);
  CHECK(!eq.left_uep.has_value());
  CHECK(!eq.right_uep.has_value());
  CHECK(std::isinf(min_barrier_energy(m, eq)));
  CHECK(std::isinf(well_radius(eq)));
  CHECK(convergence_energy(m, eq) > 0.0);
}

TEST_CASE("degenerate saddle is reported but never bounds a swing") {
  // f = d*(1-d)^2 = d - 2 d^2 + d^3: double root at 1
  const PolynomialOscillator m(0.0, {1.0, -2.0, 1.0});
  const EquilibriumSet eq = find_equilibria(m);
  REQUIRE(eq.all.size() >= 2);
  const auto deg = std::find_if(eq.all.begin(), eq.all.end(), [](auto& e) {
    return e.kind == EquilibriumKind::Degenerate;
  });
  REQUIRE(deg != eq.all.end());
  CHECK(deg->location == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(!eq.right_uep.has_value());
  CHECK_THROWS_AS(escape_possible(m, *deg), DegenerateEquilibrium);
}

TEST_CASE("escape_possible accepts only strict UEPs") {
  const PolynomialOscillator m(4.42e-4, {0.2649, -0.0503, -0.04414});
  const EquilibriumSet eq = find_equilibria(m);
  CHECK(escape_possible(m, *eq.right_uep));
  CHECK(escape_possible(m, *eq.left_uep));
  CHECK_THROWS_AS(escape_possible(m, eq.sep), InvalidOptions);
}

TEST_CASE("derived scales of the benchmark landscape") {
  const PolynomialOscillator m(4.42e-4, {0.2649, -0.0503, -0.04414});
  const EquilibriumSet eq = find_equilibria(m);
  CHECK(escape_bound(eq) ==
        doctest::Approx(1.5 * 3.0849332938077514).epsilon(1e-12));
  CHECK(min_barrier_energy(m, eq) ==
        doctest::Approx(0.2197678788239645).epsilon(1e-12));
  CHECK(convergence_energy(m, eq) ==
        doctest::Approx(1e-9 * 0.7533129983867713).epsilon(1e-9));
  CHECK(well_radius(eq) ==
        doctest::Approx(1.945377335493297).epsilon(1e-12));
}

}  // TEST_SUITE
