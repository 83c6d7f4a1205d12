#pragma once

#include <stdexcept>
#include <string>

namespace stablemix {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (t <= 0, u outside (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameter bundle violates its constraint (theta <= -alpha, beta < alpha*gamma, ...).
class ConstraintError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Gamma function evaluated at a non-positive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Result not representable as a finite double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A series (or asymptotic expansion) did not reach its tolerance.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its subdivision budget.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// An inverse-CDF table could not capture the distribution.
class TabulationError : public Error {
 public:
  using Error::Error;
};

/// Requested evaluator does not support the given mixing law.
class UnsupportedMixing : public Error {
 public:
  using Error::Error;
};

/// Caller-level misuse (sample size too small, malformed grid, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace stablemix
