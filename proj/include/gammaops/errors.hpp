#pragma once

#include <stdexcept>
#include <string>

namespace gammaops {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parameter constraints violated (k > n, r > n, invalid config, ...).
class ConstraintError : public Error {
public:
  using Error::Error;
};

/// A moment of order m was requested past the divergence threshold.
class MomentUndefinedError : public ConstraintError {
public:
  using ConstraintError::ConstraintError;
};

/// Argument outside the operator domain (x <= 0, t <= 0, delta <= 0).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Declared growth order of the integrand exceeds the admissible threshold.
class GrowthError : public ConstraintError {
public:
  using ConstraintError::ConstraintError;
};

/// Quadrature failed to reach the requested tolerance within the node budget.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// A test function does not carry the analytic derivative that was requested.
class MissingDerivativeError : public ConstraintError {
public:
  using ConstraintError::ConstraintError;
};

/// An analytic modulus was required (bound checks) but is not available.
class MissingModulusError : public ConstraintError {
public:
  using ConstraintError::ConstraintError;
};

/// A ladder of n values has the wrong shape (e.g. not doubling).
class LadderError : public ConstraintError {
public:
  using ConstraintError::ConstraintError;
};

} // namespace gammaops
