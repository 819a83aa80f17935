#include "swsig/model.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "swsig/errors.hpp"

namespace swsig {

NotDiscreteError::NotDiscreteError(std::size_t step, double residual)
    : ValidationError("control at step " + std::to_string(step) +
                      " is not discrete (residual " + std::to_string(residual) + ")"),
      step_(step),
      residual_(residual) {}

BudgetError::BudgetError(double required, std::size_t budget)
    : std::runtime_error("enumeration requires " + std::to_string(static_cast<long double>(required)) +
                         " evaluations, budget is " + std::to_string(budget)),
      required_(required) {}

SwitchedSystem::SwitchedSystem(std::vector<Matrix> modes) : modes_(std::move(modes)) {
  if (modes_.size() < 2) throw ValidationError("switched system needs at least 2 modes");
  const auto n = modes_.front().rows();
  if (n < 1) throw DimensionError("mode matrices must be at least 1x1");
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].rows() != n || modes_[i].cols() != n)
      throw DimensionError("mode " + std::to_string(i + 1) + " is not " + std::to_string(n) + "x" +
                           std::to_string(n));
    if (!modes_[i].allFinite())
      throw ValidationError("mode " + std::to_string(i + 1) + " has non-finite entries");
  }
}

ProblemSpec::ProblemSpec(SwitchedSystem system, Vector xi, int steps, double step_length, Matrix Q,
                         double lambda, Regularizer regularizer)
    : system_(std::move(system)),
      xi_(std::move(xi)),
      steps_(steps),
      h_(step_length),
      Q_(std::move(Q)),
      lambda_(lambda),
      regularizer_(std::move(regularizer)) {
  const int n = system_.state_dim();
  if (xi_.size() != n) throw DimensionError("xi must have length " + std::to_string(n));
  if (!xi_.allFinite()) throw ValidationError("xi has non-finite entries");
  if (steps_ < 1) throw ValidationError("K must be a positive integer");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw ValidationError("h must be positive");
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) throw ValidationError("lambda must be positive");
  if (Q_.rows() != n || Q_.cols() != n) throw DimensionError("Q must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!Q_.allFinite()) throw ValidationError("Q has non-finite entries");

  const double scale = std::max(1.0, Q_.cwiseAbs().maxCoeff());
  if ((Q_ - Q_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ValidationError("Q is not symmetric");
  const Matrix sym = 0.5 * (Q_ + Q_.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > 0.0))
    throw ValidationError("Q is not positive definite");
}

ProblemSpec ProblemSpec::with_initial_state(Vector xi) const {
  ProblemSpec out = *this;
  if (xi.size() != xi_.size()) throw DimensionError("xi must have length " + std::to_string(xi_.size()));
  out.xi_ = std::move(xi);
  return out;
}

ProblemSpec ProblemSpec::with_steps(int steps) const {
  return ProblemSpec(system_, xi_, steps, h_, Q_, lambda_, regularizer_);
}

ProblemSpec ProblemSpec::with_step_length(double h) const {
  return ProblemSpec(system_, xi_, steps_, h, Q_, lambda_, regularizer_);
}

ProblemSpec ProblemSpec::with_lambda(double lambda) const {
  return ProblemSpec(system_, xi_, steps_, h_, Q_, lambda, regularizer_);
}

ControlSequence::ControlSequence(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) throw DimensionError("control sequence is empty");
  for (Eigen::Index k = 0; k < values_.rows(); ++k) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < values_.cols(); ++i) {
      const double v = values_(k, i);
      if (!(v >= -kSimplexTolerance && v <= 1.0 + kSimplexTolerance))
        throw ValidationError("control entry (" + std::to_string(k) + "," + std::to_string(i) +
                              ") outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSimplexTolerance)
      throw ValidationError("control row " + std::to_string(k) + " does not sum to 1");
  }
}

ModeSequence::ModeSequence(std::vector<int> zero_based, int mode_count)
    : indices_(std::move(zero_based)), mode_count_(mode_count) {
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] < 0 || indices_[k] >= mode_count_)
      throw InvalidModeError("mode " + std::to_string(indices_[k] + 1) + " at step " + std::to_string(k) +
                             " is outside 1.." + std::to_string(mode_count_));
  }
}

ModeSequence ModeSequence::from_one_based(const std::vector<int>& indices, int mode_count) {
  std::vector<int> zb(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) zb[k] = indices[k] - 1;
  return ModeSequence(std::move(zb), mode_count);
}

std::vector<int> ModeSequence::one_based() const {
  std::vector<int> out(indices_.size());
  for (std::size_t k = 0; k < indices_.size(); ++k) out[k] = indices_[k] + 1;
  return out;
}

ControlSequence to_one_hot(const ModeSequence& sigma) {
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(sigma.size()), sigma.mode_count());
  for (std::size_t k = 0; k < sigma.size(); ++k) u(static_cast<Eigen::Index>(k), sigma[k]) = 1.0;
  return ControlSequence(std::move(u));
}

ControlSequence to_one_hot(const std::vector<int>& one_based, int mode_count) {
  return to_one_hot(ModeSequence::from_one_based(one_based, mode_count));
}

ModeSequence to_mode_sequence(const ControlSequence& u, double tol) {
  std::vector<int> modes(static_cast<std::size_t>(u.steps()));
  for (int k = 0; k < u.steps(); ++k) {
    Eigen::Index best = 0;
    const double top = u.values().row(k).maxCoeff(&best);
    if (top < 1.0 - tol) throw NotDiscreteError(static_cast<std::size_t>(k), 1.0 - top);
    modes[static_cast<std::size_t>(k)] = static_cast<int>(best);
  }
  return ModeSequence(std::move(modes), u.modes());
}

}  // namespace swsig
