#pragma once

#include <cstddef>
#include <vector>

#include "geac/errors.hpp"

namespace geac {

// =============================================================================
// State
// =============================================================================

/// Instantaneous state of the one degree of freedom: angle deviation delta
/// [rad] and speed deviation omega [rad/s], both measured from the SEP.
struct State {
  double t = 0.0;
  double delta = 0.0;
  double omega = 0.0;
};

// =============================================================================
// Polynomial oscillator
// =============================================================================

/// Second-order oscillator in SEP-centered coordinates:
///
///   delta' = omega
///   omega' = -a0*omega - f(delta),   f(delta) = sum_{k=1..N} a_k delta^k
///
/// Invariants enforced on construction: N >= 1, a1 > 0 (the origin is a
/// stable equilibrium), aN != 0, every coefficient finite, and no constant
/// term (a shifted model is rejected with NonzeroConstantTerm, not silently
/// recentered). The optional knob kappa > 0 scales every restoring
/// coefficient, i.e. the stored a_k are kappa times the input values; it
/// rescales the potential landscape relative to kinetic energy and defaults
/// to the identity.
class PolynomialOscillator {
 public:
  /// @param damping    a0 >= 0 [1/s]
  /// @param restoring  a_1..a_N [rad/s^2 per rad^k]
  PolynomialOscillator(double damping, std::vector<double> restoring,
                       double kappa = 1.0);

  /// Construct from a raw coefficient list that may carry a constant term.
  /// The constant must satisfy |c| <= 1e-12 * max_k |a_k| or the model is
  /// rejected with NonzeroConstantTerm.
  static PolynomialOscillator from_raw(double damping, double constant,
                                       std::vector<double> restoring,
                                       double kappa = 1.0);

  double damping() const { return damping_; }
  double kappa() const { return kappa_; }
  /// Effective restoring coefficients (kappa already folded in), a_1..a_N.
  const std::vector<double>& coeffs() const { return coeffs_; }
  /// Coefficients as given at construction, before kappa scaling.
  const std::vector<double>& base_coeffs() const { return base_coeffs_; }
  std::size_t order() const { return coeffs_.size(); }
  /// max_k |a_k| of the effective coefficients; scale for tolerances.
  double coeff_scale() const { return coeff_scale_; }

 private:
  double damping_;
  double kappa_;
  std::vector<double> coeffs_;
  std::vector<double> base_coeffs_;
  double coeff_scale_;
};

/// Restoring force f(delta) = sum a_k delta^k, evaluated by Horner's rule.
double eval_f(const PolynomialOscillator& model, double delta);

/// f'(delta); the classification slope at equilibria.
double eval_f_prime(const PolynomialOscillator& model, double delta);

/// Phase-space velocity (delta', omega') = (omega, -a0*omega - f(delta)).
void vector_field(const PolynomialOscillator& model, const State& s,
                  double& ddelta, double& domega);

/// Potential energy V(delta) = sum a_k delta^(k+1)/(k+1); V(0) = 0, V' = f.
double potential_energy(const PolynomialOscillator& model, double delta);

/// Kinetic energy 0.5 * omega^2.
double kinetic_energy(const State& s);

/// Total energy E = 0.5*omega^2 + V(delta). Along trajectories
/// dE/dt = -a0*omega^2, so E is conserved exactly when a0 = 0.
double total_energy(const PolynomialOscillator& model, const State& s);

// =============================================================================
// Single machine / infinite bus source model
// =============================================================================

/// Classical SMIB swing-equation parameters. Angles are absolute [rad];
/// the electrical power curve is pmax * sin(delta).
struct SmibParams {
  double h;        // inertia constant [s], > 0
  double d;        // damping coefficient [pu], >= 0
  double omega_s;  // synchronous speed [rad/s], > 0
  double pm;       // mechanical power [pu]
  double pmax;     // electrical power amplitude [pu], pm < pmax
};

/// Throws InvalidModel / NoSepError if the parameters are out of range.
void validate(const SmibParams& p);

/// Taylor-expand the SMIB restoring power around its SEP delta_s =
/// asin(pm/pmax) up to the given order:
///
///   a0  = d / (2h)
///   a_k = (omega_s / (2h)) * pmax * sin(delta_s + k*pi/2) / k!
///
/// With sep_shift = false the expansion is taken around delta = 0 instead;
/// the resulting constant term makes construction fail with
/// NonzeroConstantTerm, which callers can use to detect non-centered input.
PolynomialOscillator from_smib_taylor(const SmibParams& p, bool sep_shift,
                                      int order, double kappa = 1.0);

// =============================================================================
// Raw polynomial right-hand side (fault-on phases)
// =============================================================================

/// Unvalidated polynomial dynamics delta'' = -damping*delta' - sum c_j delta^j
/// (j = 0..M, constant term allowed). Fault-on phases generally have no SEP
/// at the origin, so they cannot satisfy the PolynomialOscillator invariants;
/// this carrier exists only to integrate the faulted interval of a scenario.
struct RawPolynomial {
  double damping = 0.0;
  std::vector<double> coeffs;  // c_0..c_M

  double eval(double delta) const;
  double antiderivative(double delta) const;
};

}  // namespace geac
