#pragma once

#include "geac/integrator.hpp"
#include "geac/oscillator.hpp"
#include "geac/swing.hpp"

namespace geac {

/// Wraps an angle into (-pi, pi].
double canonical_angle(double theta);

// =============================================================================
// Sinusoidal SMIB closed forms
// =============================================================================

/// Equilibria of the swing equation with electrical power pmax*sin(delta):
/// the SEP below pi/2 and its two neighboring saddles.
struct SmibEquilibria {
  double delta_s;   // asin(pm/pmax)
  double delta_u1;  // pi - delta_s
  double delta_u2;  // -pi - delta_s
};

SmibEquilibria smib_equilibria(const SmibParams& p);

/// Fault timeline: the three phases (pre-fault, fault-on, post-fault) share
/// every parameter except the maximum deliverable power, which must satisfy
/// pmax_on < pm < pmax_post < pmax_pre so the fault accelerates the rotor
/// and the post-fault system has somewhere to hold it.
struct SmibScenario {
  double h;
  double d;
  double omega_s;
  double pm;
  double pmax_pre;
  double pmax_on;
  double pmax_post;
  double t0 = 0.0;  // fault occurrence [s]
  double tc = 0.1;  // fault clearance [s], > t0
};

void validate(const SmibScenario& s);

/// Parameters of one phase; phase is 1 (pre), 2 (on) or 3 (post).
SmibParams phase_params(const SmibScenario& s, int phase);

/// Acceleration and deceleration areas on the power-angle plane for a fault
/// cleared at angle delta_c, with damping ignored:
///   a_acc = pm*(dc - ds1) + pmax_on*(cos dc - cos ds1)
///   a_dec = pmax_post*(cos dc - cos du13) - pm*(du13 - dc)
/// margin = (a_dec - a_acc)/a_acc; +infinity when the fault is cleared
/// instantly (a_acc = 0). delta_c must lie in [delta_s1, delta_u13), else
/// DomainError.
struct ClassicalMargin {
  double a_acc;
  double a_dec;
  double margin;
};

ClassicalMargin classical_margin(const SmibScenario& s, double delta_c);

/// Clearing angle at which the margin is exactly zero:
///   cos dc* = [pm*(du13 - ds1) + pmax_post*cos du13 - pmax_on*cos ds1]
///             / (pmax_post - pmax_on)
/// Throws NoCriticalAngle when the argument leaves [-1, 1] (the scenario is
/// stable or unstable for every admissible clearing angle).
double critical_clearing_angle(const SmibScenario& s);

// =============================================================================
// Time-domain pieces
// =============================================================================

/// Swing dynamics in absolute angle for one phase. No SEP requirement: the
/// fault-on phase with pmax < pm is exactly the interesting case.
class SmibDynamics final : public Dynamics {
 public:
  explicit SmibDynamics(const SmibParams& p);
  double accel(double delta, double omega) const override;
  double potential(double delta) const override;

 private:
  SmibParams p_;
  double a0_;
  double gain_;  // omega_s / (2h)
};

/// State (absolute angle) when the fault-on trajectory from rest at the
/// pre-fault SEP first reaches delta_c. The fault-on motion is strictly
/// accelerating (pmax_on < pm), so every delta_c >= delta_s1 is reached;
/// smaller values throw DomainError.
State fault_on_clearance_state(const SmibScenario& s, double delta_c);

/// Speed at clearance, i.e. fault_on_clearance_state(...).omega.
double fault_on_speed(const SmibScenario& s, double delta_c);

/// State (absolute angle) at the clearing time tc, integrating the fault-on
/// phase from rest at the pre-fault SEP over [t0, tc].
State fault_on_state_at_time(const SmibScenario& s);

/// The same fault through the generalized machinery: Taylor-expand the
/// post-fault phase to the given order around its SEP, move the clearance
/// state into SEP-centered coordinates, and score the first swing. As the
/// order grows this converges to the classical closed-form margin.
SwingRecord geac_first_swing(const SmibScenario& s, double delta_c, int order);

}  // namespace geac
