#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace burgers {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-facing parameters (grid, ghost count, partition, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was not met by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Evaluation point outside the domain covered by a piecewise polynomial.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Mathematical domain error (negative radicand, t <= 0 in a series, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown during time stepping: NaN/Inf, exponent overflow,
/// degenerate phi. Carries the offending step and node when known.
class NumericalError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit NumericalError(const std::string& what, std::size_t step = npos,
                          std::size_t node = npos)
      : Error(what), step_(step), node_(node) {}

  std::size_t step() const noexcept { return step_; }
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t step_;
  std::size_t node_;
};

/// NaN or Inf appeared in a field: the run has diverged.
class InstabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Exponent differences inside a kernel window too large for double.
class OverflowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Adaptive quadrature failed to converge.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Relative error norm with a zero reference denominator.
class UndefinedNormError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace burgers
