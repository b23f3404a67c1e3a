#pragma once

#include <stdexcept>
#include <string>

namespace caustic {

// Validation failures: bad parameters or arguments outside an operation's domain.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class InvalidParameter : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// Point too close to a turning point for the allowed-region formula.
class ProximityError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InvalidData : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// Numerical failures.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature gave up; carries the best estimate it had.
class AccuracyFailure : public NumericalError {
public:
  AccuracyFailure(const std::string& what, double estimate, double error_bound)
      : NumericalError(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

private:
  double estimate_;
  double error_bound_;
};

}  // namespace caustic
