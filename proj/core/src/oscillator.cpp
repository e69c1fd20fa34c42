#include "geac/oscillator.hpp"

#include <cmath>
#include <limits>

namespace geac {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

PolynomialOscillator::PolynomialOscillator(double damping,
                                           std::vector<double> restoring,
                                           double kappa)
    : damping_(damping), kappa_(kappa), base_coeffs_(std::move(restoring)) {
  if (!std::isfinite(damping_) || damping_ < 0.0)
    throw InvalidModel("damping coefficient must be finite and >= 0");
  if (!std::isfinite(kappa_) || kappa_ <= 0.0)
    throw InvalidModel("kappa must be finite and > 0");
  if (base_coeffs_.empty())
    throw InvalidModel("restoring polynomial needs at least the linear term");
  if (!all_finite(base_coeffs_))
    throw InvalidModel("restoring coefficients must be finite");
  if (base_coeffs_.front() <= 0.0)
    throw InvalidModel("a1 must be > 0 (origin must be a SEP)");
  if (base_coeffs_.back() == 0.0)
    throw InvalidModel("leading coefficient aN must be nonzero");

  coeffs_.reserve(base_coeffs_.size());
  for (double a : base_coeffs_) coeffs_.push_back(kappa_ * a);
  coeff_scale_ = max_abs(coeffs_);
}

PolynomialOscillator PolynomialOscillator::from_raw(double damping,
                                                    double constant,
                                                    std::vector<double> restoring,
                                                    double kappa) {
  if (!std::isfinite(constant))
    throw InvalidModel("constant term must be finite");
  const double scale = max_abs(restoring);
  if (std::abs(constant) > 1e-12 * scale)
    throw NonzeroConstantTerm(
        "restoring polynomial has a constant term; coordinates must be "
        "SEP-centered before construction");
  return PolynomialOscillator(damping, std::move(restoring), kappa);
}

double eval_f(const PolynomialOscillator& model, double delta) {
  const auto& a = model.coeffs();
  // Horner on f(d)/d, then one multiply: f = d * (a1 + d*(a2 + ...)).
  double acc = 0.0;
  for (std::size_t k = a.size(); k-- > 0;) acc = a[k] + delta * acc;
  return delta * acc;
}

double eval_f_prime(const PolynomialOscillator& model, double delta) {
  const auto& a = model.coeffs();
  double acc = 0.0;
  for (std::size_t k = a.size(); k-- > 0;)
    acc = static_cast<double>(k + 1) * a[k] + delta * acc;
  return acc;
}

void vector_field(const PolynomialOscillator& model, const State& s,
                  double& ddelta, double& domega) {
  ddelta = s.omega;
  domega = -model.damping() * s.omega - eval_f(model, s.delta);
}

double potential_energy(const PolynomialOscillator& model, double delta) {
  const auto& a = model.coeffs();
  // Horner on V(d)/d^2: V = d^2 * (a1/2 + d*(a2/3 + ...)).
  double acc = 0.0;
  for (std::size_t k = a.size(); k-- > 0;)
    acc = a[k] / static_cast<double>(k + 2) + delta * acc;
  return delta * delta * acc;
}

double kinetic_energy(const State& s) { return 0.5 * s.omega * s.omega; }

double total_energy(const PolynomialOscillator& model, const State& s) {
  return kinetic_energy(s) + potential_energy(model, s.delta);
}

void validate(const SmibParams& p) {
  if (!std::isfinite(p.h) || p.h <= 0.0)
    throw InvalidModel("inertia constant h must be finite and > 0");
  if (!std::isfinite(p.d) || p.d < 0.0)
    throw InvalidModel("damping d must be finite and >= 0");
  if (!std::isfinite(p.omega_s) || p.omega_s <= 0.0)
    throw InvalidModel("synchronous speed must be finite and > 0");
  if (!std::isfinite(p.pm) || !std::isfinite(p.pmax))
    throw InvalidModel("pm and pmax must be finite");
  if (p.pm <= 0.0) throw InvalidModel("pm must be > 0");
  if (p.pm >= p.pmax)
    throw NoSepError("pm >= pmax: the power curve admits no SEP");
}

PolynomialOscillator from_smib_taylor(const SmibParams& p, bool sep_shift,
                                      int order, double kappa) {
  validate(p);
  if (order < 1) throw InvalidOptions("taylor order must be >= 1");

  const double a0 = p.d / (2.0 * p.h);
  const double gain = p.omega_s / (2.0 * p.h);
  const double delta_s = std::asin(p.pm / p.pmax);
  const double center = sep_shift ? delta_s : 0.0;

  // k-th derivative of pmax*sin(delta) at the center is
  // pmax*sin(center + k*pi/2); divide by k! for the Taylor coefficient.
  std::vector<double> coeffs;
  coeffs.reserve(static_cast<std::size_t>(order));
  double factorial = 1.0;
  for (int k = 1; k <= order; ++k) {
    factorial *= static_cast<double>(k);
    const double deriv = p.pmax * std::sin(center + 0.5 * M_PI * k);
    coeffs.push_back(gain * deriv / factorial);
  }
  const double constant = gain * (p.pmax * std::sin(center) - p.pm);
  return PolynomialOscillator::from_raw(a0, constant, std::move(coeffs), kappa);
}

double RawPolynomial::eval(double delta) const {
  double acc = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 0;) acc = coeffs[j] + delta * acc;
  return acc;
}

double RawPolynomial::antiderivative(double delta) const {
  double acc = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 0;)
    acc = coeffs[j] / static_cast<double>(j + 1) + delta * acc;
  return delta * acc;
}

}  // namespace geac
