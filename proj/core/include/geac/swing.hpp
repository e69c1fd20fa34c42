#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "geac/equilibria.hpp"
#include "geac/integrator.hpp"
#include "geac/oscillator.hpp"

namespace geac {

// =============================================================================
// Swings
// =============================================================================

/// Trajectory segment between direction reversals. A swing ends at a
/// TurningPoint, at an outward crossing of a bounding UEP (the instability
/// indicator), or at a terminal Escape/Converged event; a trailing segment
/// cut off by the time limit is not a swing.
struct Swing {
  int index = 0;  // 1-based position within the trajectory
  Direction direction = Direction::Forward;
  State start;    // initial state, or the turning point ending the previous swing
  Event end;      // TurningPoint | UepCross (outward) | Escape | Converged
  State peak_ke;  // largest-kinetic-energy state observed within the swing
};

/// Splits a trajectory at its turning points. The first swing starts at the
/// initial state; segmentation stops at an outward UEP crossing (later
/// events describe the divergence, not further swings). Inward UEP
/// crossings, e.g. when the initial state lies outside the well, do not end
/// a swing. peak_ke is the best of the swing's start and its acceleration
/// sign-change events, which bracket every interior kinetic-energy extremum.
std::vector<Swing> segment_swings(const Trajectory& traj);

/// Kinetic energy 0.5*omega^2 injected by the fault: the first-swing
/// acceleration area when only the clearance speed is known.
double first_acc_area(double omega_tc);

/// True when the state is pinned: total energy below every reachable
/// barrier while inside the well. Energy never increases, so no UEP
/// crossing can ever follow and Stable is provable even without a
/// Converged event (the undamped case has none).
bool energy_sealed(const PolynomialOscillator& model, const EquilibriumSet& eq,
                   const State& s);

/// `base` with the landscape-derived fields (escape bound, watched UEP
/// levels, convergence thresholds) filled in wherever the caller left them
/// at their unset defaults.
IntegrateOptions with_analysis_defaults(const IntegrateOptions& base,
                                        const PolynomialOscillator& model,
                                        const EquilibriumSet& eq);

// =============================================================================
// Margins
// =============================================================================

enum class SwingVerdict { Stable, Unstable, NeverUnstableThisDirection };

/// One scored swing. Invariants: Stable => margin >= 0, Unstable =>
/// margin < 0, finite margin => a_acc > 0. a_sur is defined for stable
/// swings only; margin is +infinity when the swing cannot destabilize
/// (no bounding UEP in its direction) or the oscillator has effectively
/// converged (a_acc below the convergence threshold).
struct SwingRecord {
  Swing swing;
  double a_acc = 0.0;
  double a_dec = 0.0;
  std::optional<double> a_sur;
  double margin = 0.0;
  SwingVerdict verdict = SwingVerdict::Stable;
};

/// Scores one swing against the potential landscape:
///   - ends at a turning point delta_r: a_dec = a_acc,
///     a_sur = V(uep) - V(delta_r), margin = a_sur / a_acc;
///   - ends crossing the bounding UEP with residual speed w_x:
///     a_dec = a_acc - 0.5*w_x^2, margin = (a_dec - a_acc) / a_acc < 0;
///   - no bounding UEP in the swing direction: NeverUnstableThisDirection.
/// a_acc is the swing's peak kinetic energy. A crossing with residual
/// kinetic energy within the convergence threshold counts as critical
/// (margin 0, Stable). Throws UnresolvedSwing for a swing whose end event
/// cannot carry a verdict.
SwingRecord swing_margin(const PolynomialOscillator& model,
                         const EquilibriumSet& eq, const Swing& swing);

// =============================================================================
// Post-fault assessment
// =============================================================================

enum class OverallVerdict { Stable, Unstable, Undecided };

struct AssessOptions {
  int max_swings = 50;
  // rtol/atol/max_time are taken as given; escape bound, watched levels and
  // convergence thresholds are filled from the equilibrium landscape unless
  // already set to something finite/nonempty.
  IntegrateOptions integrate;
};

struct AssessmentReport {
  std::vector<SwingRecord> records;
  OverallVerdict overall = OverallVerdict::Undecided;
  // Smallest finite margin across records; +infinity when none is finite.
  double min_margin = std::numeric_limits<double>::infinity();
  EventKind terminating_event = EventKind::TimeLimit;
};

/// Everything assess_post_fault computed, for reporting and plotting.
struct AssessOutput {
  PolynomialOscillator model;
  EquilibriumSet equilibria;
  Trajectory trajectory;
  AssessmentReport report;
};

/// Integrates the post-fault model from the clearance state, segments the
/// motion into swings and scores each one. The report ends at the first
/// unstable swing. Overall verdict: Unstable on any unstable record; Stable
/// when the run converged, or when it timed out with total energy pinned
/// below every reachable barrier (energy is non-increasing, so no crossing
/// can ever occur); Undecided otherwise.
AssessmentReport assess_post_fault(const PolynomialOscillator& model,
                                   const State& init,
                                   const AssessOptions& opt = {});

/// assess_post_fault plus the trajectory and equilibria it worked from.
AssessOutput assess_post_fault_full(const PolynomialOscillator& model,
                                    const State& init,
                                    const AssessOptions& opt = {});

// =============================================================================
// Online assessor
// =============================================================================

/// Streaming variant of the swing assessment for measured (t, delta, omega)
/// samples: turning points and UEP crossings are located by linear
/// interpolation between consecutive samples, the within-swing peak kinetic
/// energy is tracked sample by sample, and a SwingRecord is emitted whenever
/// a swing closes. The first swing's acceleration area uses the first
/// sample's kinetic energy as a floor. Single writer; not thread-safe.
class OnlineAssessor {
 public:
  explicit OnlineAssessor(PolynomialOscillator model, int max_swings = 50);

  /// Feed one sample; time must increase strictly (NonMonotoneTime
  /// otherwise). Returns the record of the swing this sample closed, if any.
  std::optional<SwingRecord> push_sample(double t, double delta, double omega);

  const std::vector<SwingRecord>& records() const { return records_; }
  const EquilibriumSet& equilibria() const { return eq_; }

  /// Unstable once any emitted record is unstable; Undecided while no
  /// conclusion has been reached (streams have no convergence event).
  OverallVerdict overall() const;

 private:
  std::optional<SwingRecord> close_swing(const Event& end);

  PolynomialOscillator model_;
  EquilibriumSet eq_;
  int max_swings_;
  std::vector<SwingRecord> records_;
  bool have_sample_ = false;
  bool halted_ = false;
  State prev_;
  State swing_start_;
  State peak_;
  int next_index_ = 1;
  int last_motion_ = 0;  // sign of the most recent nonzero omega sample
};

}  // namespace geac
