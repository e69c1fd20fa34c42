#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"

#include "geac/eac_classical.hpp"
#include "geac/errors.hpp"

using namespace geac;

namespace {

// One machine against an infinite bus; the fault drops the deliverable
// power to 40% of pre-fault and the post-fault line carries 75%.
SmibScenario textbook() {
  SmibScenario s;
  s.h = 4.5;
  s.d = 0.0;
  s.omega_s = 377.0;
  s.pm = 1.0;
  s.pmax_pre = 2.0;
  s.pmax_on = 0.8;
  s.pmax_post = 1.5;
  return s;
}

}  // namespace

TEST_SUITE("eac_classical") {

TEST_CASE("canonical_angle wraps into (-pi, pi]") {
  CHECK(canonical_angle(0.0) == 0.0);
  CHECK(canonical_angle(M_PI) == doctest::Approx(M_PI));
  CHECK(canonical_angle(-M_PI) == doctest::Approx(M_PI));
  CHECK(canonical_angle(3.0 * M_PI) == doctest::Approx(M_PI));
  CHECK(canonical_angle(2.0 * M_PI + 0.3) == doctest::Approx(0.3));
  CHECK(canonical_angle(-7.5 * M_PI) ==
        doctest::Approx(0.5 * M_PI).epsilon(1e-12));
}

TEST_CASE("equilibrium angles of the three phases") {
  const SmibScenario s = textbook();
  const SmibEquilibria pre = smib_equilibria(phase_params(s, 1));
  const SmibEquilibria post = smib_equilibria(phase_params(s, 3));

  CHECK(pre.delta_s == doctest::Approx(0.5235987755982989).epsilon(1e-14));
  CHECK(post.delta_s == doctest::Approx(0.7297276562269663).epsilon(1e-14));
  CHECK(post.delta_u1 == doctest::Approx(2.4118649973628266).epsilon(1e-14));
  CHECK(post.delta_u2 ==
        doctest::Approx(-M_PI - 0.7297276562269663).epsilon(1e-14));
  CHECK(pre.delta_u1 == doctest::Approx(M_PI - pre.delta_s).epsilon(1e-14));

  CHECK_THROWS_AS(phase_params(s, 0), InvalidOptions);
  CHECK_THROWS_AS(phase_params(s, 4), InvalidOptions);
}

TEST_CASE("critical clearing angle and the margin sign around it") {
  const SmibScenario s = textbook();
  const double dc = critical_clearing_angle(s);
  CHECK(dc == doctest::Approx(1.459981221820915).epsilon(1e-12));

  CHECK(std::abs(classical_margin(s, dc).margin) < 1e-10);
  CHECK(classical_margin(s, dc - 0.01).margin > 0.0);
  CHECK(classical_margin(s, dc + 0.01).margin < 0.0);
}

TEST_CASE("margin domain and endpoints") {
  const SmibScenario s = textbook();
  const SmibEquilibria pre = smib_equilibria(phase_params(s, 1));
  const SmibEquilibria post = smib_equilibria(phase_params(s, 3));

  CHECK(std::isinf(classical_margin(s, pre.delta_s).margin));
  CHECK_THROWS_AS(classical_margin(s, pre.delta_s - 0.01), DomainError);
  CHECK_THROWS_AS(classical_margin(s, post.delta_u1), DomainError);
  CHECK_THROWS_AS(classical_margin(s, post.delta_u1 + 0.5), DomainError);
}

TEST_CASE("areas agree with direct quadrature of the power imbalance") {
  using boost::math::quadrature::gauss_kronrod;
  const SmibScenario s = textbook();
  const double ds1 = smib_equilibria(phase_params(s, 1)).delta_s;
  const double du13 = smib_equilibria(phase_params(s, 3)).delta_u1;
  const double dc = 1.1;

  const double acc = gauss_kronrod<double, 15>::integrate(
      [&](double d) { return s.pm - s.pmax_on * std::sin(d); }, ds1, dc);
  const double dec = gauss_kronrod<double, 15>::integrate(
      [&](double d) { return s.pmax_post * std::sin(d) - s.pm; }, dc, du13);

  const ClassicalMargin m = classical_margin(s, dc);
  CHECK(m.a_acc == doctest::Approx(acc).epsilon(1e-12));
  CHECK(m.a_dec == doctest::Approx(dec).epsilon(1e-12));
  CHECK(m.margin == doctest::Approx((dec - acc) / acc).epsilon(1e-12));
}

TEST_CASE("some faults have no critical angle at all") {
  SmibScenario s = textbook();
  s.pmax_on = 0.2;
  s.pmax_post = 1.01;
  CHECK_THROWS_AS(critical_clearing_angle(s), NoCriticalAngle);
}

TEST_CASE("scenario validation rejects a broken power ordering") {
  SmibScenario s = textbook();
  s.pmax_on = 1.2;  // fault-on power above pm: rotor would not accelerate
  CHECK_THROWS_AS(validate(s), InvalidModel);

  s = textbook();
  s.pmax_post = 2.5;  // post above pre
  CHECK_THROWS_AS(validate(s), InvalidModel);

  s = textbook();
  s.pm = 1.6;  // above post-fault capacity: no post-fault SEP
  CHECK_THROWS_AS(validate(s), InvalidModel);

  s = textbook();
  s.tc = 0.0;  // clears before it occurs
  CHECK_THROWS_AS(validate(s), InvalidModel);

  CHECK_NOTHROW(validate(textbook()));
}

TEST_CASE("fault-on trajectory honors the energy balance") {
  using boost::math::quadrature::gauss_kronrod;
  const SmibScenario s = textbook();
  const double ds1 = smib_equilibria(phase_params(s, 1)).delta_s;
  const double dc = 1.2;

  const State at_dc = fault_on_clearance_state(s, dc);
  CHECK(at_dc.delta == doctest::Approx(dc).epsilon(1e-10));
  CHECK(at_dc.omega > 0.0);
  CHECK(fault_on_speed(s, dc) == doctest::Approx(at_dc.omega));

  // 0.5*w^2 equals the work done by the accelerating power, scaled by
  // omega_s / (2h).
  const double area = gauss_kronrod<double, 15>::integrate(
      [&](double d) { return s.pm - s.pmax_on * std::sin(d); }, ds1, dc);
  const double gain = s.omega_s / (2.0 * s.h);
  CHECK(0.5 * at_dc.omega * at_dc.omega ==
        doctest::Approx(gain * area).epsilon(1e-8));

  // clearing at the pre-fault SEP means clearing a fault of zero duration
  const State instant = fault_on_clearance_state(s, ds1);
  CHECK(instant.omega == doctest::Approx(0.0));
  CHECK_THROWS_AS(fault_on_clearance_state(s, ds1 - 0.05), DomainError);
}

TEST_CASE("clearance by time is consistent with clearance by angle") {
  SmibScenario s = textbook();
  s.tc = 0.25;
  const State by_time = fault_on_state_at_time(s);
  CHECK(by_time.t == doctest::Approx(0.25));
  const State by_angle = fault_on_clearance_state(s, by_time.delta);
  CHECK(by_angle.omega == doctest::Approx(by_time.omega).epsilon(1e-8));
}

TEST_CASE("polynomial bridge converges to the closed form") {
  const SmibScenario s = textbook();
  const double dc = 1.1;
  const ClassicalMargin exact = classical_margin(s, dc);

  double prev = std::numeric_limits<double>::infinity();
  for (int order : {3, 5, 7, 9}) {
    const SwingRecord rec = geac_first_swing(s, dc, order);
    const double diff = std::abs(rec.margin - exact.margin);
    CHECK(diff <= prev * (1.0 + 1e-9) + 1e-15);
    prev = diff;
  }
  CHECK(prev < 5e-2);
  CHECK(std::abs(geac_first_swing(s, dc, 9).margin - exact.margin) < 5e-2);
}

}  // TEST_SUITE
