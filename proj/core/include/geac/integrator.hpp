#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "geac/equilibria.hpp"
#include "geac/oscillator.hpp"

namespace geac {

enum class EventKind {
  TurningPoint,  // omega crosses zero: one swing ends, the next begins
  UepCross,      // delta crosses a watched equilibrium level
  AccelZero,     // acceleration crosses zero: kinetic-energy extremum
  Escape,        // |delta| crossed the escape bound (terminal)
  Converged,     // settled at the SEP within the energy threshold (terminal)
  TimeLimit      // integration horizon reached (terminal)
};

enum class Direction { Forward, Backward };

struct Event {
  EventKind kind;
  State state;
  Direction direction;  // motion direction at the event
  double level = 0.0;   // crossed delta level, UepCross / Escape only
};

// Continuous extension of one accepted step, a quartic in
// theta = (t - t0)/h per component ([*][0] = delta, [*][1] = omega).
struct DenseStep {
  double t0;
  double h;
  double c[5][2];
};

struct Trajectory {
  std::vector<State> samples;  // initial state, then accepted step endpoints
  std::vector<Event> events;   // chronological, times within (t_begin, t_end]
  EventKind termination = EventKind::TimeLimit;
  double t_begin = 0.0;
  double t_end = 0.0;
  std::vector<DenseStep> dense;
  std::size_t n_steps = 0;
  std::size_t n_rejected = 0;
  std::size_t n_rhs = 0;
};

// One-degree-of-freedom dynamics delta'' = accel(delta, delta'). The
// potential enters only the Converged test; implementations without a
// meaningful potential may return 0 and disable convergence.
class Dynamics {
 public:
  virtual double accel(double delta, double omega) const = 0;
  virtual double potential(double delta) const = 0;
  virtual ~Dynamics() = default;
};

class OscillatorDynamics final : public Dynamics {
 public:
  explicit OscillatorDynamics(const PolynomialOscillator& model)
      : model_(&model) {}
  double accel(double delta, double omega) const override {
    return -model_->damping() * omega - eval_f(*model_, delta);
  }
  double potential(double delta) const override {
    return potential_energy(*model_, delta);
  }

 private:
  const PolynomialOscillator* model_;
};

class RawPolynomialDynamics final : public Dynamics {
 public:
  explicit RawPolynomialDynamics(const RawPolynomial& rhs) : rhs_(&rhs) {}
  double accel(double delta, double omega) const override {
    return -rhs_->damping * omega - rhs_->eval(delta);
  }
  double potential(double delta) const override {
    return rhs_->antiderivative(delta);
  }

 private:
  const RawPolynomial* rhs_;
};

struct IntegrateOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_time = 200.0;  // horizon, measured from the initial state's t

  // |delta| beyond which the run terminates with Escape.
  double escape_delta = std::numeric_limits<double>::infinity();

  // Delta levels reported as UepCross events; `stop_levels` additionally
  // terminate the run at the crossing (used for the fault-on bridge).
  std::vector<double> watched_levels;
  std::vector<double> stop_levels;

  // Converged fires when 0.5*omega^2 + potential(delta) <= converge_energy
  // and |delta| <= converge_radius. converge_energy = 0 disables the test.
  double converge_energy = 0.0;
  double converge_radius = std::numeric_limits<double>::infinity();

  bool watch_turning = true;
  bool watch_accel = true;

  double initial_step = 0.0;  // 0: automatic
  double max_step = 1.0;      // clipped to the remaining span
  double fixed_step = 0.0;    // > 0: fixed-step mode, error control off
  std::size_t max_steps = 20'000'000;
};

/// Adaptive embedded Runge-Kutta 5(4) run with dense output and located
/// events. Throws InvalidOptions for malformed options, StepSizeUnderflow on
/// blow-up or an exhausted step budget.
Trajectory integrate_with_events(const Dynamics& sys, const State& init,
                                 const IntegrateOptions& opt);

/// Dense-output state at time t within [t_begin, t_end]; exact at sample
/// times. Throws OutOfSpan outside the span.
State interpolate_state(const Trajectory& traj, double t);

/// Default analysis options wired to a model: escape bound and convergence
/// thresholds from the equilibrium landscape, bounding UEPs watched.
IntegrateOptions analysis_options(const PolynomialOscillator& model,
                                  const EquilibriumSet& eq);

}  // namespace geac
