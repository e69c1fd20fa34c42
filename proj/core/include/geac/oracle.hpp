#pragma once

#include <functional>
#include <optional>

#include "geac/integrator.hpp"
#include "geac/oscillator.hpp"

namespace geac {

// =============================================================================
// Brute-force reference classifier
// =============================================================================
//
// Deliberately ignorant of the swing/margin machinery: it watches only for
// UEP crossings, escape, and settling, so it can cross-check the area-based
// verdicts without sharing their code path.

enum class OracleClass { Stable, Unstable, Undecided };

struct OracleVerdict {
  OracleClass classification = OracleClass::Undecided;
  /// The UEP crossing or escape that decided instability, when there is one.
  std::optional<Event> first_escape_event;
  /// Filled by bisect_critical when this verdict sits at a located boundary.
  std::optional<double> critical_parameter;
};

/// Classify a post-fault initial state by direct simulation. Stable when the
/// trajectory converges onto the SEP or ends energy-sealed inside the well;
/// Unstable on the first outward UEP crossing that still carries kinetic
/// energy, or on escape. Undecided only when the time limit cuts off an
/// unsealed trajectory.
OracleVerdict oracle_classify(const PolynomialOscillator& model,
                              const State& init,
                              const IntegrateOptions& base = {});

struct CriticalResult {
  double c_star = 0.0;
  /// Smallest-magnitude finite swing margin at c_star; near zero by
  /// construction, and checked to be so.
  double margin_at_critical = 0.0;
  int iterations = 0;
};

/// Locate the stability boundary of a one-parameter family of initial states
/// by bisecting the oracle verdict over c in [lo, hi]. The endpoints must
/// disagree. The result is cross-validated against the area criterion: the
/// swing margin at c_star must vanish to within 1e-3 or the search fails.
CriticalResult bisect_critical(const PolynomialOscillator& model,
                               const std::function<State(double)>& family,
                               double lo, double hi,
                               const IntegrateOptions& base = {});

}  // namespace geac
