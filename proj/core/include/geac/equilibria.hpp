#pragma once

#include <optional>
#include <vector>

#include "geac/oscillator.hpp"

namespace geac {

enum class EquilibriumKind { Sep, Uep, Degenerate };

struct Equilibrium {
  double location;       // delta* [rad]
  EquilibriumKind kind;  // sign of f'(delta*), Degenerate when |f'| ~ 0
  double slope;          // f'(delta*)
};

/// All real equilibria of the oscillator, plus the ones the swing analysis
/// cares about: the SEP at the origin and the nearest strict UEP on each
/// side. Degenerate points appear in `all` but never bound a swing.
struct EquilibriumSet {
  std::vector<Equilibrium> all;  // sorted by location
  Equilibrium sep;               // always the origin
  std::optional<Equilibrium> left_uep;
  std::optional<Equilibrium> right_uep;
};

/// Real roots of f via companion-matrix eigenvalues (balanced, one Newton
/// polish per root), classified by the sign of f'(delta*) with degeneracy
/// tolerance 1e-9 * max|a_k|. The factored root at the origin is exact.
EquilibriumSet find_equilibria(const PolynomialOscillator& model);

/// True when crossing this UEP can lead to loss of stability, i.e. the
/// potential curves downward on the far side (f'(delta*) < 0, which a strict
/// UEP always satisfies). Throws DegenerateEquilibrium for degenerate points
/// and InvalidOptions if the point is not a UEP.
bool escape_possible(const PolynomialOscillator& model, const Equilibrium& e);

// Derived scales used by the integrator defaults and the assessors.

/// |delta| escape bound: 1.5 * max over existing UEP magnitudes, or 10 rad
/// when a side has no UEP.
double escape_bound(const EquilibriumSet& eq);

/// Convergence threshold eps_E = 1e-9 * max barrier potential (falls back to
/// 1e-9 * max(V(+-escape bound)) when the model has no UEP at all).
double convergence_energy(const PolynomialOscillator& model,
                          const EquilibriumSet& eq);

/// Smallest potential barrier among the bounding UEPs; +inf when neither
/// side has one. Total energy below this value (inside the well) can never
/// lead to a UEP crossing, since dE/dt <= 0.
double min_barrier_energy(const PolynomialOscillator& model,
                          const EquilibriumSet& eq);

/// Radius of the well around the SEP: min |delta*| over bounding UEPs,
/// +inf when there is none.
double well_radius(const EquilibriumSet& eq);

}  // namespace geac
