#include "geac/eac_classical.hpp"

#include <cmath>
#include <limits>

namespace geac {

double canonical_angle(double theta) {
  double a = std::remainder(theta, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

SmibEquilibria smib_equilibria(const SmibParams& p) {
  validate(p);
  const double ds = std::asin(p.pm / p.pmax);
  return SmibEquilibria{ds, M_PI - ds, -M_PI - ds};
}

void validate(const SmibScenario& s) {
  if (!(s.h > 0.0) || !std::isfinite(s.h))
    throw InvalidModel("inertia must be > 0");
  if (!(s.omega_s > 0.0) || !std::isfinite(s.omega_s))
    throw InvalidModel("synchronous speed must be > 0");
  if (s.d < 0.0 || !std::isfinite(s.d))
    throw InvalidModel("damping must be >= 0");
  if (!(s.pm > 0.0) || !std::isfinite(s.pm))
    throw InvalidModel("mechanical power must be > 0");
  if (!std::isfinite(s.pmax_pre) || !std::isfinite(s.pmax_on) ||
      !std::isfinite(s.pmax_post))
    throw InvalidModel("power limits must be finite");
  if (!(s.pmax_on < s.pm && s.pm < s.pmax_post && s.pmax_post < s.pmax_pre))
    throw InvalidModel("scenario requires pmax_on < pm < pmax_post < pmax_pre");
  if (s.pmax_on < 0.0) throw InvalidModel("pmax_on must be >= 0");
  if (!(s.t0 < s.tc)) throw InvalidModel("fault must clear after it occurs");
}

SmibParams phase_params(const SmibScenario& s, int phase) {
  double pmax;
  switch (phase) {
    case 1:
      pmax = s.pmax_pre;
      break;
    case 2:
      pmax = s.pmax_on;
      break;
    case 3:
      pmax = s.pmax_post;
      break;
    default:
      throw InvalidOptions("phase must be 1, 2 or 3");
  }
  return SmibParams{s.h, s.d, s.omega_s, s.pm, pmax};
}

ClassicalMargin classical_margin(const SmibScenario& s, double delta_c) {
  validate(s);
  const double dc = canonical_angle(delta_c);
  const double ds1 = smib_equilibria(phase_params(s, 1)).delta_s;
  const double du13 = smib_equilibria(phase_params(s, 3)).delta_u1;
  if (dc < ds1 - 1e-12 || dc >= du13)
    throw DomainError("clearing angle must lie in [delta_s1, delta_u13)");

  const double a_acc =
      s.pm * (dc - ds1) + s.pmax_on * (std::cos(dc) - std::cos(ds1));
  const double a_dec =
      s.pmax_post * (std::cos(dc) - std::cos(du13)) - s.pm * (du13 - dc);
  const double margin =
      a_acc > 0.0 ? (a_dec - a_acc) / a_acc
                  : std::numeric_limits<double>::infinity();
  return ClassicalMargin{a_acc, a_dec, margin};
}

double critical_clearing_angle(const SmibScenario& s) {
  validate(s);
  const double ds1 = smib_equilibria(phase_params(s, 1)).delta_s;
  const double du13 = smib_equilibria(phase_params(s, 3)).delta_u1;
  const double den = s.pmax_post - s.pmax_on;
  const double num = s.pm * (du13 - ds1) + s.pmax_post * std::cos(du13) -
                     s.pmax_on * std::cos(ds1);
  // den > 0 by the scenario invariant; a zero-width gap cannot happen here.
  const double arg = num / den;
  if (arg < -1.0 || arg > 1.0)
    throw NoCriticalAngle(
        "no clearing angle equalizes the areas for this scenario");
  return std::acos(arg);
}

// =============================================================================
// Time domain
// =============================================================================

SmibDynamics::SmibDynamics(const SmibParams& p) : p_(p) {
  if (!(p.h > 0.0) || !(p.omega_s > 0.0) || p.d < 0.0 || p.pmax < 0.0)
    throw InvalidModel("smib phase parameters out of range");
  a0_ = p.d / (2.0 * p.h);
  gain_ = p.omega_s / (2.0 * p.h);
}

double SmibDynamics::accel(double delta, double omega) const {
  return -a0_ * omega - gain_ * (p_.pmax * std::sin(delta) - p_.pm);
}

double SmibDynamics::potential(double delta) const {
  // Antiderivative of gain*(pmax*sin - pm); gauge fixed at delta = 0.
  return gain_ * (p_.pmax * (1.0 - std::cos(delta)) - p_.pm * delta);
}

State fault_on_clearance_state(const SmibScenario& s, double delta_c) {
  validate(s);
  const double ds1 = smib_equilibria(phase_params(s, 1)).delta_s;
  if (delta_c < ds1 - 1e-12)
    throw DomainError("clearing angle lies behind the pre-fault SEP");
  if (delta_c <= ds1) return State{s.t0, ds1, 0.0};

  SmibDynamics fault_on(phase_params(s, 2));
  IntegrateOptions opt;
  opt.stop_levels = {delta_c};
  opt.escape_delta = std::abs(delta_c) + 2.0 * M_PI;
  opt.watch_turning = false;
  opt.watch_accel = false;
  opt.max_time = 1000.0;
  const Trajectory traj =
      integrate_with_events(fault_on, State{s.t0, ds1, 0.0}, opt);
  if (traj.termination != EventKind::UepCross)
    throw DomainError("clearing angle not reached by the fault-on motion");
  return traj.events.back().state;
}

double fault_on_speed(const SmibScenario& s, double delta_c) {
  return fault_on_clearance_state(s, delta_c).omega;
}

State fault_on_state_at_time(const SmibScenario& s) {
  validate(s);
  const double ds1 = smib_equilibria(phase_params(s, 1)).delta_s;
  SmibDynamics fault_on(phase_params(s, 2));
  IntegrateOptions opt;
  opt.max_time = s.tc - s.t0;
  opt.escape_delta = 1e6;  // the horizon, not distance, ends this run
  opt.watch_turning = false;
  opt.watch_accel = false;
  const Trajectory traj =
      integrate_with_events(fault_on, State{s.t0, ds1, 0.0}, opt);
  return traj.samples.back();
}

SwingRecord geac_first_swing(const SmibScenario& s, double delta_c,
                             int order) {
  const SmibEquilibria e3 = smib_equilibria(phase_params(s, 3));
  const State clearance = fault_on_clearance_state(s, delta_c);
  const PolynomialOscillator model =
      from_smib_taylor(phase_params(s, 3), true, order);
  const State init{0.0, delta_c - e3.delta_s, clearance.omega};
  AssessOptions opt;
  opt.integrate.max_time = 20.0;  // the first swing resolves within seconds
  const AssessmentReport report = assess_post_fault(model, init, opt);
  if (report.records.empty())
    throw UnresolvedSwing("clearance state produced no swing to score");
  return report.records.front();
}

}  // namespace geac
