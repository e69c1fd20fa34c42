#include "geac/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "geac/equilibria.hpp"
#include "geac/errors.hpp"
#include "geac/swing.hpp"

namespace geac {

namespace {

bool outward(const Event& e) {
  return (e.level > 0.0 && e.direction == Direction::Forward) ||
         (e.level < 0.0 && e.direction == Direction::Backward);
}

}  // namespace

OracleVerdict oracle_classify(const PolynomialOscillator& model,
                              const State& init,
                              const IntegrateOptions& base) {
  const EquilibriumSet eq = find_equilibria(model);

  OracleVerdict verdict;
  if (energy_sealed(model, eq, init)) {
    // No integration needed: the state can never reach a barrier.
    verdict.classification = OracleClass::Stable;
    return verdict;
  }

  IntegrateOptions opt = with_analysis_defaults(base, model, eq);
  // Swing bookkeeping events are dead weight here.
  opt.watch_turning = false;
  opt.watch_accel = false;

  OscillatorDynamics dyn(model);
  const Trajectory traj = integrate_with_events(dyn, init, opt);

  for (const Event& e : traj.events) {
    if (e.kind == EventKind::UepCross && outward(e) &&
        kinetic_energy(e.state) > opt.converge_energy) {
      verdict.classification = OracleClass::Unstable;
      verdict.first_escape_event = e;
      return verdict;
    }
    if (e.kind == EventKind::Escape) {
      verdict.classification = OracleClass::Unstable;
      verdict.first_escape_event = e;
      return verdict;
    }
  }

  if (traj.termination == EventKind::Converged ||
      (!traj.samples.empty() && energy_sealed(model, eq, traj.samples.back())))
    verdict.classification = OracleClass::Stable;
  else
    verdict.classification = OracleClass::Undecided;
  return verdict;
}

namespace {

bool oracle_unstable(const PolynomialOscillator& model,
                     const std::function<State(double)>& family, double c,
                     const IntegrateOptions& base) {
  const OracleVerdict v = oracle_classify(model, family(c), base);
  if (v.classification == OracleClass::Undecided) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "oracle verdict undecided at parameter %.17g", c);
    throw RootFindingFailure(buf);
  }
  return v.classification == OracleClass::Unstable;
}

}  // namespace

CriticalResult bisect_critical(const PolynomialOscillator& model,
                               const std::function<State(double)>& family,
                               double lo, double hi,
                               const IntegrateOptions& base) {
  if (!family) throw InvalidOptions("bisect_critical: family is empty");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw InvalidOptions("bisect_critical: need finite lo < hi");

  const bool lo_unstable = oracle_unstable(model, family, lo, base);
  const bool hi_unstable = oracle_unstable(model, family, hi, base);
  if (lo_unstable == hi_unstable)
    throw SameVerdictAtEndpoints(
        "bisect_critical: both endpoints classify alike; no boundary "
        "bracketed");

  CriticalResult result;
  const double tol =
      1e-6 * std::max({1.0, std::abs(lo), std::abs(hi)});
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point floor
    if (oracle_unstable(model, family, mid, base) == lo_unstable)
      lo = mid;
    else
      hi = mid;
    ++result.iterations;
  }
  result.c_star = 0.5 * (lo + hi);

  // Independent cross-check: at the boundary the area criterion must see a
  // vanishing margin on some swing.
  AssessOptions aopt;
  aopt.integrate = base;
  const AssessmentReport report =
      assess_post_fault(model, family(result.c_star), aopt);
  double best = std::numeric_limits<double>::infinity();
  for (const SwingRecord& rec : report.records)
    if (std::isfinite(rec.margin) && std::abs(rec.margin) < std::abs(best))
      best = rec.margin;
  if (!std::isfinite(best) || std::abs(best) > 1e-3) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "margin cross-check failed at boundary %.17g: "
                  "nearest swing margin %.3g",
                  result.c_star, best);
    throw RootFindingFailure(buf);
  }
  result.margin_at_critical = best;
  return result;
}

}  // namespace geac
