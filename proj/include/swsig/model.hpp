#pragma once

#include <Eigen/Core>

#include <vector>

#include "swsig/regularizers.hpp"

namespace swsig {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Linear switched plant xdot = A_sigma x with N >= 2 modes of equal size n.
class SwitchedSystem {
 public:
  explicit SwitchedSystem(std::vector<Matrix> modes);

  int state_dim() const { return static_cast<int>(modes_.front().rows()); }
  int mode_count() const { return static_cast<int>(modes_.size()); }
  /// Zero-based.
  const Matrix& mode(int i) const { return modes_.at(static_cast<std::size_t>(i)); }
  const std::vector<Matrix>& modes() const { return modes_; }

 private:
  std::vector<Matrix> modes_;
};

/**
 * Discretized finite-horizon problem: minimize x[K]' Q x[K] + lambda h sum_k psi(u[k])
 * over K zero-order-hold steps of length h starting at xi.
 */
class ProblemSpec {
 public:
  ProblemSpec(SwitchedSystem system, Vector xi, int steps, double step_length, Matrix Q,
              double lambda, Regularizer regularizer);

  const SwitchedSystem& system() const { return system_; }
  const Vector& initial_state() const { return xi_; }
  int steps() const { return steps_; }
  double step_length() const { return h_; }
  double horizon() const { return steps_ * h_; }
  const Matrix& terminal_weight() const { return Q_; }
  double lambda() const { return lambda_; }
  const Regularizer& regularizer() const { return regularizer_; }

  int state_dim() const { return system_.state_dim(); }
  int mode_count() const { return system_.mode_count(); }

  ProblemSpec with_initial_state(Vector xi) const;
  ProblemSpec with_steps(int steps) const;
  ProblemSpec with_step_length(double h) const;
  ProblemSpec with_lambda(double lambda) const;

 private:
  SwitchedSystem system_;
  Vector xi_;
  int steps_;
  double h_;
  Matrix Q_;
  double lambda_;
  Regularizer regularizer_;
};

inline constexpr double kSimplexTolerance = 1e-9;

/// K x N matrix whose rows lie on the (N-1)-simplex.
class ControlSequence {
 public:
  explicit ControlSequence(Matrix values);

  int steps() const { return static_cast<int>(values_.rows()); }
  int modes() const { return static_cast<int>(values_.cols()); }
  const Matrix& values() const { return values_; }
  auto row(int k) const { return values_.row(k); }

 private:
  Matrix values_;
};

/// Switching signal on the sampling grid. Stored zero-based; `one_based()` for I/O.
class ModeSequence {
 public:
  ModeSequence() = default;
  ModeSequence(std::vector<int> zero_based, int mode_count);
  static ModeSequence from_one_based(const std::vector<int>& indices, int mode_count);

  std::size_t size() const { return indices_.size(); }
  int mode_count() const { return mode_count_; }
  int operator[](std::size_t k) const { return indices_[k]; }
  const std::vector<int>& zero_based() const { return indices_; }
  std::vector<int> one_based() const;

  bool operator==(const ModeSequence&) const = default;

 private:
  std::vector<int> indices_;
  int mode_count_ = 0;
};

struct Trajectory {
  Vector times;   // K+1 samples k*h
  Matrix states;  // (K+1) x n, row k is x[k]
};

ControlSequence to_one_hot(const ModeSequence& sigma);
ControlSequence to_one_hot(const std::vector<int>& one_based, int mode_count);

/// Rounds each row to its argmax; throws NotDiscreteError if some row has max entry < 1 - tol.
ModeSequence to_mode_sequence(const ControlSequence& u, double tol);

}  // namespace swsig
