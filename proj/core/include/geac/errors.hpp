#pragma once

#include <stdexcept>
#include <string>

namespace geac {

// Base of every exception thrown by the library. The two categories below
// map onto the CLI exit codes: InputError -> 2, NumericalError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Model construction rejected (non-finite coefficient, a1 <= 0, aN == 0, ...).
class InvalidModel : public InputError {
 public:
  using InputError::InputError;
};

// Restoring polynomial carries a constant term beyond tolerance, i.e. the
// coordinates are not SEP-centered. Kept distinct from InvalidModel so the
// caller can tell a shifted model from a malformed one.
class NonzeroConstantTerm : public InvalidModel {
 public:
  using InvalidModel::InvalidModel;
};

// SMIB parameters admit no stable equilibrium (pm >= pmax).
class NoSepError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidOptions : public InputError {
 public:
  using InputError::InputError;
};

// Scenario or report text is not syntactically valid.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

// Scenario or report text parsed but violates the schema.
class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

class IoError : public InputError {
 public:
  using InputError::InputError;
};

// Argument outside the documented domain of a closed-form expression.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

// Online assessor fed samples with non-increasing timestamps.
class NonMonotoneTime : public InputError {
 public:
  using InputError::InputError;
};

// Interpolation requested outside the integrated span.
class OutOfSpan : public InputError {
 public:
  using InputError::InputError;
};

// Swing passed to the scorer has no resolved end event.
class UnresolvedSwing : public InputError {
 public:
  using InputError::InputError;
};

class RootFindingFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Equilibrium with |f'(delta*)| below the classification tolerance where a
// strict UEP is required.
class DegenerateEquilibrium : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Step size collapsed below the representable resolution (stiffness or
// finite-time blow-up).
class StepSizeUnderflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoCriticalAngle : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Bisection interval endpoints classify identically; no boundary inside.
class SameVerdictAtEndpoints : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace geac
