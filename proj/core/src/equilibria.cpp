#include "geac/equilibria.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace geac {

namespace {

// Parlett-Reinsch balancing: scale rows/columns by powers of the radix until
// row and column norms agree, leaving eigenvalues untouched.
void balance(Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  constexpr double radix = 2.0;
  constexpr double radix_sq = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double scale = 1.0;
      const double s = c + r;
      while (c < g) {
        scale *= radix;
        c *= radix_sq;
      }
      g = r * radix;
      while (c > g) {
        scale /= radix;
        c /= radix_sq;
      }
      if ((c + r) / scale < 0.95 * s) {
        done = false;
        m.row(i) /= scale;
        m.col(i) *= scale;
      }
    }
  }
}

// Real roots of q(x) = b0 + b1 x + ... + bM x^M (bM != 0), M >= 1.
std::vector<double> real_poly_roots(const std::vector<double>& b) {
  const int m = static_cast<int>(b.size()) - 1;
  if (m < 1) return {};
  if (m == 1) return {-b[0] / b[1]};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) companion(i, m - 1) = -b[i] / b[m];
  balance(companion);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw RootFindingFailure("companion-matrix eigenvalue iteration failed");

  std::vector<double> roots;
  for (int i = 0; i < m; ++i) {
    const std::complex<double> z = solver.eigenvalues()[i];
    if (std::abs(z.imag()) <= 1e-9 * (1.0 + std::abs(z.real())))
      roots.push_back(z.real());
  }
  return roots;
}

double eval_poly(const std::vector<double>& b, double x) {
  double acc = 0.0;
  for (std::size_t j = b.size(); j-- > 0;) acc = b[j] + x * acc;
  return acc;
}

double eval_poly_prime(const std::vector<double>& b, double x) {
  double acc = 0.0;
  for (std::size_t j = b.size(); j-- > 1;)
    acc = static_cast<double>(j) * b[j] + x * acc;
  return acc;
}

}  // namespace

EquilibriumSet find_equilibria(const PolynomialOscillator& model) {
  const auto& a = model.coeffs();
  const double scale = model.coeff_scale();
  const double degeneracy_tol = 1e-9 * scale;

  // f(d) = d * q(d) with q(d) = a1 + a2 d + ... + aN d^(N-1); the origin is
  // always a root, the rest come from q.
  std::vector<double> q(a.begin(), a.end());
  std::vector<double> roots = real_poly_roots(q);

  // One guarded Newton step per root against q itself. An eigenvalue of a
  // simple root is already accurate to ~1e-14, so a genuine correction is
  // tiny; near a multiple root the quotient is cancellation noise over a
  // vanishing derivative and can be O(1), so large steps and steps that do
  // not reduce |q| are rejected instead of applied.
  for (double& r : roots) {
    const double dq = eval_poly_prime(q, r);
    if (dq == 0.0) continue;
    const double step = eval_poly(q, r) / dq;
    if (!std::isfinite(step) || std::abs(step) > 1e-3 * (1.0 + std::abs(r)))
      continue;
    const double polished = r - step;
    if (std::abs(eval_poly(q, polished)) <= std::abs(eval_poly(q, r)))
      r = polished;
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> kept;
  for (double r : roots) {
    if (!std::isfinite(r)) continue;
    const double pow_scale = std::pow(std::max(1.0, std::abs(r)),
                                      static_cast<double>(a.size()));
    if (std::abs(eval_f(model, r)) > 1e-6 * scale * pow_scale)
      throw RootFindingFailure("equilibrium residual above tolerance");
    // Collapse near-identical eigenvalues (multiple roots) and anything
    // indistinguishable from the exact origin root.
    const double merge_tol = 1e-7 * std::max(1.0, std::abs(r));
    if (std::abs(r) <= merge_tol) continue;
    if (!kept.empty() && std::abs(r - kept.back()) <= merge_tol) continue;
    kept.push_back(r);
  }

  EquilibriumSet set;
  auto classify = [&](double loc) {
    const double slope = eval_f_prime(model, loc);
    EquilibriumKind kind;
    if (std::abs(slope) <= degeneracy_tol)
      kind = EquilibriumKind::Degenerate;
    else
      kind = slope > 0.0 ? EquilibriumKind::Sep : EquilibriumKind::Uep;
    return Equilibrium{loc, kind, slope};
  };

  set.sep = Equilibrium{0.0, EquilibriumKind::Sep, eval_f_prime(model, 0.0)};
  for (double r : kept) {
    if (r < 0.0) set.all.push_back(classify(r));
  }
  set.all.push_back(set.sep);
  for (double r : kept) {
    if (r > 0.0) set.all.push_back(classify(r));
  }

  // Nearest strict UEP on each side bounds the swing in that direction.
  for (const Equilibrium& e : set.all) {
    if (e.kind != EquilibriumKind::Uep) continue;
    if (e.location < 0.0) {
      if (!set.left_uep || e.location > set.left_uep->location)
        set.left_uep = e;
    } else if (e.location > 0.0) {
      if (!set.right_uep || e.location < set.right_uep->location)
        set.right_uep = e;
    }
  }
  return set;
}

bool escape_possible(const PolynomialOscillator& model, const Equilibrium& e) {
  if (e.kind == EquilibriumKind::Degenerate)
    throw DegenerateEquilibrium(
        "escape query on a degenerate equilibrium is undefined");
  if (e.kind != EquilibriumKind::Uep)
    throw InvalidOptions("escape_possible expects a UEP");
  const double slope = eval_f_prime(model, e.location);
  if (std::abs(slope) <= 1e-9 * model.coeff_scale())
    throw DegenerateEquilibrium(
        "escape query on a degenerate equilibrium is undefined");
  // Strict UEP: potential is a local maximum, the far side slopes away.
  return slope < 0.0;
}

double escape_bound(const EquilibriumSet& eq) {
  if (eq.left_uep && eq.right_uep)
    return 1.5 * std::max(std::abs(eq.left_uep->location),
                          std::abs(eq.right_uep->location));
  return 10.0;
}

double convergence_energy(const PolynomialOscillator& model,
                          const EquilibriumSet& eq) {
  double barrier = 0.0;
  if (eq.left_uep)
    barrier = std::max(barrier, potential_energy(model, eq.left_uep->location));
  if (eq.right_uep)
    barrier =
        std::max(barrier, potential_energy(model, eq.right_uep->location));
  if (barrier <= 0.0) {
    const double b = escape_bound(eq);
    barrier = std::max(potential_energy(model, b), potential_energy(model, -b));
  }
  return 1e-9 * barrier;
}

double min_barrier_energy(const PolynomialOscillator& model,
                          const EquilibriumSet& eq) {
  double barrier = std::numeric_limits<double>::infinity();
  if (eq.left_uep)
    barrier = std::min(barrier, potential_energy(model, eq.left_uep->location));
  if (eq.right_uep)
    barrier =
        std::min(barrier, potential_energy(model, eq.right_uep->location));
  return barrier;
}

double well_radius(const EquilibriumSet& eq) {
  double radius = std::numeric_limits<double>::infinity();
  if (eq.left_uep) radius = std::min(radius, std::abs(eq.left_uep->location));
  if (eq.right_uep) radius = std::min(radius, std::abs(eq.right_uep->location));
  return radius;
}

}  // namespace geac
