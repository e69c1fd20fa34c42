#include <cmath>
#include <vector>

#include "doctest.h"

#include "geac/errors.hpp"
#include "geac/oscillator.hpp"

using namespace geac;

namespace {

PolynomialOscillator cubic_benchmark() {
  return PolynomialOscillator(4.42e-4, {0.2649, -0.0503, -0.04414});
}

}  // namespace

TEST_SUITE("oscillator") {

TEST_CASE("restoring force and derivative of the cubic benchmark") {
  const PolynomialOscillator m = cubic_benchmark();
  CHECK(eval_f(m, 0.0) == 0.0);
  CHECK(eval_f(m, 1.0) == doctest::Approx(0.17046).epsilon(1e-12));
  CHECK(eval_f(m, -1.0) == doctest::Approx(-0.2649 - 0.0503 + 0.04414)
                               .epsilon(1e-12));
  CHECK(eval_f_prime(m, 0.0) == doctest::Approx(0.2649).epsilon(1e-15));
  // finite-difference cross-check of the derivative
  const double h = 1e-6;
  const double fd = (eval_f(m, 0.7 + h) - eval_f(m, 0.7 - h)) / (2 * h);
  CHECK(eval_f_prime(m, 0.7) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("potential energy is the antiderivative of f with V(0) = 0") {
  const PolynomialOscillator m = cubic_benchmark();
  CHECK(potential_energy(m, 0.0) == 0.0);
  CHECK(potential_energy(m, 1.0) ==
        doctest::Approx(0.10464833333333334).epsilon(1e-14));
  CHECK(potential_energy(m, 0.13) ==
        doctest::Approx(0.0021984169269833333).epsilon(1e-13));
  // dV/ddelta = f everywhere, not only at hand-picked points
  for (double d = -3.0; d <= 2.0; d += 0.37) {
    const double h = 1e-6;
    const double fd =
        (potential_energy(m, d + h) - potential_energy(m, d - h)) / (2 * h);
    CHECK(fd == doctest::Approx(eval_f(m, d)).epsilon(1e-7));
  }
}

TEST_CASE("energies and the phase-space velocity") {
  const PolynomialOscillator m = cubic_benchmark();
  const State s{0.0, 1.0, -0.4};
  CHECK(kinetic_energy(s) == doctest::Approx(0.08));
  CHECK(total_energy(m, s) ==
        doctest::Approx(0.08 + 0.10464833333333334).epsilon(1e-14));
  double dd = 0.0, dw = 0.0;
  vector_field(m, s, dd, dw);
  CHECK(dd == -0.4);
  CHECK(dw == doctest::Approx(-4.42e-4 * (-0.4) - 0.17046).epsilon(1e-12));
}

TEST_CASE("construction rejects models without a SEP at the origin") {
  CHECK_THROWS_AS(PolynomialOscillator(0.0, {}), InvalidModel);
  CHECK_THROWS_AS(PolynomialOscillator(0.0, {-0.5}), InvalidModel);
  CHECK_THROWS_AS(PolynomialOscillator(0.0, {0.0, 1.0}), InvalidModel);
  CHECK_THROWS_AS(PolynomialOscillator(0.0, {1.0, 0.0}), InvalidModel);
  CHECK_THROWS_AS(PolynomialOscillator(-0.1, {1.0}), InvalidModel);
  CHECK_THROWS_AS(PolynomialOscillator(0.0, {1.0, std::nan("")}),
                  InvalidModel);
  CHECK_THROWS_AS(PolynomialOscillator(0.0, {1.0}, -1.0), InvalidModel);
  CHECK_NOTHROW(PolynomialOscillator(0.0, {1.0}));
}

TEST_CASE("from_raw tolerates only a numerically-zero constant term") {
  CHECK_NOTHROW(PolynomialOscillator::from_raw(0.0, 0.0, {1.0, -0.5}));
  CHECK_NOTHROW(PolynomialOscillator::from_raw(0.0, 1e-14, {1.0, -0.5}));
  CHECK_THROWS_AS(PolynomialOscillator::from_raw(0.0, 1e-3, {1.0, -0.5}),
                  NonzeroConstantTerm);
}

TEST_CASE("kappa scales the stored coefficients but keeps the base") {
  const PolynomialOscillator m(0.1, {0.2649, -0.0503, -0.04414}, 2.5);
  CHECK(m.kappa() == 2.5);
  CHECK(m.order() == 3);
  REQUIRE(m.coeffs().size() == 3);
  CHECK(m.coeffs()[0] == doctest::Approx(2.5 * 0.2649).epsilon(1e-15));
  CHECK(m.coeffs()[2] == doctest::Approx(2.5 * -0.04414).epsilon(1e-15));
  CHECK(m.base_coeffs()[0] == 0.2649);
  CHECK(m.base_coeffs()[2] == -0.04414);
  // potential scales linearly with kappa
  const PolynomialOscillator unit(0.1, {0.2649, -0.0503, -0.04414});
  CHECK(potential_energy(m, 1.3) ==
        doctest::Approx(2.5 * potential_energy(unit, 1.3)).epsilon(1e-14));
}

TEST_CASE("SMIB Taylor expansion around the SEP") {
  SmibParams p{4.5, 0.0, 377.0, 1.0, 1.5};
  validate(p);
  const double gain = p.omega_s / (2.0 * p.h);
  const double sep = std::asin(p.pm / p.pmax);

  const PolynomialOscillator m = from_smib_taylor(p, true, 5);
  REQUIRE(m.order() == 5);
  CHECK(m.damping() == 0.0);
  double factorial = 1.0;
  for (int k = 1; k <= 5; ++k) {
    factorial *= k;
    const double expected =
        gain * p.pmax * std::sin(sep + k * 3.14159265358979323846 / 2.0) /
        factorial;
    CHECK(m.coeffs()[k - 1] == doctest::Approx(expected).epsilon(1e-12));
  }
  // the expansion linearizes correctly: f'(0) = gain * pmax * cos(sep)
  CHECK(eval_f_prime(m, 0.0) ==
        doctest::Approx(gain * p.pmax * std::cos(sep)).epsilon(1e-12));

  // around delta = 0 the constant term pm does not vanish
  CHECK_THROWS_AS(from_smib_taylor(p, false, 5), NonzeroConstantTerm);
  CHECK_THROWS_AS(from_smib_taylor(p, true, 0), InvalidOptions);
}

TEST_CASE("SMIB parameter validation") {
  CHECK_THROWS_AS(validate(SmibParams{0.0, 0.0, 377.0, 1.0, 1.5}),
                  InvalidModel);
  CHECK_THROWS_AS(validate(SmibParams{4.5, -0.1, 377.0, 1.0, 1.5}),
                  InvalidModel);
  CHECK_THROWS_AS(validate(SmibParams{4.5, 0.0, 0.0, 1.0, 1.5}),
                  InvalidModel);
  // no SEP when the line cannot carry the mechanical power
  CHECK_THROWS(validate(SmibParams{4.5, 0.0, 377.0, 1.5, 1.0}));
}

TEST_CASE("raw polynomial carrier evaluates with a constant term") {
  RawPolynomial raw;
  raw.damping = 0.2;
  raw.coeffs = {-0.3, 1.0, 0.5};  // c0 + c1 d + c2 d^2
  CHECK(raw.eval(0.0) == doctest::Approx(-0.3));
  CHECK(raw.eval(2.0) == doctest::Approx(-0.3 + 2.0 + 2.0));
  // antiderivative has zero constant and derivative equal to eval
  CHECK(raw.antiderivative(0.0) == 0.0);
  const double h = 1e-6, at = 1.2;
  const double fd =
      (raw.antiderivative(at + h) - raw.antiderivative(at - h)) / (2 * h);
  CHECK(fd == doctest::Approx(raw.eval(at)).epsilon(1e-8));
}

}  // TEST_SUITE
