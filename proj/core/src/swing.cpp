#include "geac/swing.hpp"

#include <algorithm>
#include <cmath>

namespace geac {

namespace {

bool outward_cross(const Event& e) {
  return (e.level > 0.0 && e.direction == Direction::Forward) ||
         (e.level < 0.0 && e.direction == Direction::Backward);
}

bool inside_well(const EquilibriumSet& eq, double delta) {
  if (eq.left_uep && delta <= eq.left_uep->location) return false;
  if (eq.right_uep && delta >= eq.right_uep->location) return false;
  return true;
}

}  // namespace

bool energy_sealed(const PolynomialOscillator& model, const EquilibriumSet& eq,
                   const State& s) {
  return total_energy(model, s) < min_barrier_energy(model, eq) &&
         inside_well(eq, s.delta);
}

// =============================================================================
// Segmentation
// =============================================================================

std::vector<Swing> segment_swings(const Trajectory& traj) {
  std::vector<Swing> swings;
  if (traj.samples.empty()) return swings;

  State start = traj.samples.front();
  State peak = start;
  int index = 1;

  auto close = [&](const Event& end) {
    swings.push_back(Swing{index++, end.direction, start, end, peak});
    start = end.state;
    peak = end.state;
  };

  for (const Event& e : traj.events) {
    switch (e.kind) {
      case EventKind::TurningPoint:
        close(e);
        break;
      case EventKind::AccelZero:
        if (kinetic_energy(e.state) > kinetic_energy(peak)) peak = e.state;
        break;
      case EventKind::UepCross:
        // Only an outward crossing ends (and dooms) the swing; an inward
        // one, e.g. from an initial state beyond the UEP, is just passage.
        if (outward_cross(e)) {
          close(e);
          return swings;
        }
        break;
      case EventKind::Escape:
      case EventKind::Converged:
        // Terminal; a zero-length segment (the event fired at the initial
        // state) is not a swing.
        if (e.state.t > start.t) close(e);
        return swings;
      case EventKind::TimeLimit:
        // The partial segment at the horizon never resolved into a swing.
        return swings;
    }
  }
  return swings;
}

double first_acc_area(double omega_tc) { return 0.5 * omega_tc * omega_tc; }

// =============================================================================
// Margins
// =============================================================================

SwingRecord swing_margin(const PolynomialOscillator& model,
                         const EquilibriumSet& eq, const Swing& swing) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double eps_e = convergence_energy(model, eq);

  SwingRecord rec;
  rec.swing = swing;
  rec.a_acc = kinetic_energy(swing.peak_ke);

  const std::optional<Equilibrium>& bound =
      swing.direction == Direction::Forward ? eq.right_uep : eq.left_uep;
  if (!bound || !escape_possible(model, *bound)) {
    rec.a_dec = rec.a_acc;
    rec.margin = inf;
    rec.verdict = SwingVerdict::NeverUnstableThisDirection;
    return rec;
  }
  const double v_uep = potential_energy(model, bound->location);

  switch (swing.end.kind) {
    case EventKind::TurningPoint:
    case EventKind::Converged: {
      rec.a_dec = rec.a_acc;
      rec.a_sur = v_uep - potential_energy(model, swing.end.state.delta);
      rec.margin = rec.a_acc > eps_e ? *rec.a_sur / rec.a_acc : inf;
      rec.verdict = SwingVerdict::Stable;
      return rec;
    }
    case EventKind::UepCross:
    case EventKind::Escape: {
      if (swing.end.kind == EventKind::UepCross && !outward_cross(swing.end))
        throw UnresolvedSwing("swing ended on an inward UEP crossing");
      const double ke_x = kinetic_energy(swing.end.state);
      if (ke_x <= eps_e) {
        // Crossed the saddle with no residual kinetic energy: critical.
        rec.a_dec = rec.a_acc;
        rec.a_sur = 0.0;
        rec.margin = 0.0;
        rec.verdict = SwingVerdict::Stable;
        return rec;
      }
      rec.a_acc = std::max(rec.a_acc, ke_x);
      rec.a_dec = rec.a_acc - ke_x;
      rec.margin = -ke_x / rec.a_acc;
      rec.verdict = SwingVerdict::Unstable;
      return rec;
    }
    default:
      throw UnresolvedSwing("swing end event carries no verdict");
  }
}

// =============================================================================
// Post-fault assessment
// =============================================================================

IntegrateOptions with_analysis_defaults(const IntegrateOptions& base,
                                        const PolynomialOscillator& model,
                                        const EquilibriumSet& eq) {
  IntegrateOptions opt = base;
  const IntegrateOptions d = analysis_options(model, eq);
  if (!std::isfinite(opt.escape_delta)) opt.escape_delta = d.escape_delta;
  if (opt.converge_energy <= 0.0) opt.converge_energy = d.converge_energy;
  if (!std::isfinite(opt.converge_radius))
    opt.converge_radius = d.converge_radius;
  if (opt.watched_levels.empty()) opt.watched_levels = d.watched_levels;
  return opt;
}

namespace {

AssessmentReport score_trajectory(const PolynomialOscillator& model,
                                  const EquilibriumSet& eq,
                                  const Trajectory& traj, int max_swings) {
  AssessmentReport report;
  report.terminating_event = traj.termination;

  const std::vector<Swing> swings = segment_swings(traj);
  bool unstable = false;
  for (const Swing& sw : swings) {
    if (static_cast<int>(report.records.size()) >= max_swings) break;
    SwingRecord rec = swing_margin(model, eq, sw);
    report.records.push_back(rec);
    if (rec.verdict == SwingVerdict::Unstable) {
      unstable = true;  // the report ends at the swing that lost stability
      break;
    }
  }

  for (const SwingRecord& rec : report.records)
    if (std::isfinite(rec.margin))
      report.min_margin = std::min(report.min_margin, rec.margin);

  if (unstable) {
    report.overall = OverallVerdict::Unstable;
  } else if (traj.termination == EventKind::Converged) {
    report.overall = OverallVerdict::Stable;
  } else if (!traj.samples.empty() &&
             energy_sealed(model, eq, traj.samples.back())) {
    // A sealed end state also rules out any earlier outward crossing: a
    // trajectory that leaves the well can never re-enter it, so ending
    // inside settles every swing, scored or not.
    report.overall = OverallVerdict::Stable;
  } else {
    report.overall = OverallVerdict::Undecided;
  }
  return report;
}

}  // namespace

AssessOutput assess_post_fault_full(const PolynomialOscillator& model,
                                    const State& init,
                                    const AssessOptions& opt) {
  if (opt.max_swings < 1) throw InvalidOptions("max_swings must be >= 1");
  EquilibriumSet eq = find_equilibria(model);
  const IntegrateOptions iopt =
      with_analysis_defaults(opt.integrate, model, eq);
  OscillatorDynamics dyn(model);
  Trajectory traj = integrate_with_events(dyn, init, iopt);
  AssessmentReport report =
      score_trajectory(model, eq, traj, opt.max_swings);
  return AssessOutput{model, std::move(eq), std::move(traj),
                      std::move(report)};
}

AssessmentReport assess_post_fault(const PolynomialOscillator& model,
                                   const State& init,
                                   const AssessOptions& opt) {
  return assess_post_fault_full(model, init, opt).report;
}

// =============================================================================
// Online assessor
// =============================================================================

OnlineAssessor::OnlineAssessor(PolynomialOscillator model, int max_swings)
    : model_(std::move(model)),
      eq_(find_equilibria(model_)),
      max_swings_(max_swings) {
  if (max_swings < 1) throw InvalidOptions("max_swings must be >= 1");
}

OverallVerdict OnlineAssessor::overall() const {
  for (const SwingRecord& rec : records_)
    if (rec.verdict == SwingVerdict::Unstable) return OverallVerdict::Unstable;
  return OverallVerdict::Undecided;
}

std::optional<SwingRecord> OnlineAssessor::close_swing(const Event& end) {
  Swing sw{next_index_++, end.direction, swing_start_, end, peak_};
  SwingRecord rec = swing_margin(model_, eq_, sw);
  records_.push_back(rec);
  if (rec.verdict == SwingVerdict::Unstable ||
      static_cast<int>(records_.size()) >= max_swings_)
    halted_ = true;
  swing_start_ = end.state;
  peak_ = end.state;
  return rec;
}

std::optional<SwingRecord> OnlineAssessor::push_sample(double t, double delta,
                                                       double omega) {
  if (!std::isfinite(t) || !std::isfinite(delta) || !std::isfinite(omega))
    throw InvalidOptions("sample must be finite");
  const State s{t, delta, omega};
  if (!have_sample_) {
    have_sample_ = true;
    prev_ = swing_start_ = peak_ = s;
    if (omega != 0.0) last_motion_ = omega > 0.0 ? 1 : -1;
    return std::nullopt;
  }
  if (t <= prev_.t)
    throw NonMonotoneTime("sample times must increase strictly");
  if (halted_) {
    prev_ = s;
    return std::nullopt;
  }

  std::optional<SwingRecord> first_closed;
  State a = prev_;
  prev_ = s;

  // Walk the segment [a, s], peeling off the earliest linear-interpolation
  // crossing until none is left.
  while (!halted_) {
    double best_theta = 2.0;
    int best = -1;  // 0 turning, 1 right level, 2 left level

    if (a.omega * s.omega < 0.0) {
      best_theta = a.omega / (a.omega - s.omega);
      best = 0;
    } else if (a.omega == 0.0 && s.omega != 0.0 && last_motion_ != 0 &&
               (s.omega > 0.0 ? 1 : -1) != last_motion_ &&
               a.t > swing_start_.t) {
      // A sample landed exactly on the reversal: the turn is at `a` itself.
      best_theta = 0.0;
      best = 0;
    }
    if (eq_.right_uep) {
      const double lv = eq_.right_uep->location;
      if (a.delta < lv && s.delta > lv && s.delta > a.delta) {
        const double theta = (lv - a.delta) / (s.delta - a.delta);
        if (theta < best_theta) {
          best_theta = theta;
          best = 1;
        }
      }
    }
    if (eq_.left_uep) {
      const double lv = eq_.left_uep->location;
      if (a.delta > lv && s.delta < lv && s.delta < a.delta) {
        const double theta = (lv - a.delta) / (s.delta - a.delta);
        if (theta < best_theta) {
          best_theta = theta;
          best = 2;
        }
      }
    }
    if (best < 0) break;

    const double tx = a.t + best_theta * (s.t - a.t);
    if (best == 0) {
      const double dx = a.delta + best_theta * (s.delta - a.delta);
      const Direction dir = (a.omega > 0.0 || (a.omega == 0.0 &&
                                               last_motion_ > 0))
                                ? Direction::Forward
                                : Direction::Backward;
      const Event end{EventKind::TurningPoint, State{tx, dx, 0.0}, dir, 0.0};
      auto rec = close_swing(end);
      if (!first_closed) first_closed = rec;
      a = end.state;
    } else {
      const Equilibrium& uep = best == 1 ? *eq_.right_uep : *eq_.left_uep;
      const double wx = a.omega + best_theta * (s.omega - a.omega);
      const Direction dir =
          best == 1 ? Direction::Forward : Direction::Backward;
      const Event end{EventKind::UepCross, State{tx, uep.location, wx}, dir,
                      uep.location};
      auto rec = close_swing(end);
      if (!first_closed) first_closed = rec;
      break;
    }
  }

  if (!halted_ && kinetic_energy(s) > kinetic_energy(peak_)) peak_ = s;
  if (s.omega != 0.0) last_motion_ = s.omega > 0.0 ? 1 : -1;
  return first_closed;
}

}  // namespace geac
