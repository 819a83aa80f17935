#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swsig {

/// Input that violates a documented precondition or type invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidModeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A regularizer argument outside [0,1] beyond the clamping tolerance.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A relaxed control row that is not close enough to any simplex vertex.
class NotDiscreteError : public ValidationError {
 public:
  NotDiscreteError(std::size_t step, double residual);

  std::size_t step() const { return step_; }
  double residual() const { return residual_; }

 private:
  std::size_t step_;
  double residual_;
};

/// Every restart of the optimizer diverged or failed.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration would exceed the evaluation budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(double required, std::size_t budget);

  double required() const { return required_; }

 private:
  double required_;
};

}  // namespace swsig
