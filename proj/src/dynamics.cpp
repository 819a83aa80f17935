#include "swsig/dynamics.hpp"

#include <string>

#include "swsig/errors.hpp"

namespace swsig {

namespace {

void check_shape(const ProblemSpec& spec, const Matrix& u) {
  if (u.rows() != spec.steps() || u.cols() != spec.mode_count())
    throw DimensionError("control sequence is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                         ", expected " + std::to_string(spec.steps()) + "x" +
                         std::to_string(spec.mode_count()));
}

// Sum_i u_i A_i x, skipping inactive modes so a one-hot row reproduces A_j x exactly.
Vector blended_drift(const SwitchedSystem& sys, const Vector& x, const Eigen::Ref<const Eigen::RowVectorXd>& u) {
  Vector drift = Vector::Zero(x.size());
  for (int i = 0; i < sys.mode_count(); ++i) {
    if (u[i] == 0.0) continue;
    const Vector ax = sys.mode(i) * x;
    drift += u[i] * ax;
  }
  return drift;
}

}  // namespace

Matrix phi(const SwitchedSystem& system, const Eigen::Ref<const Vector>& x) {
  if (x.size() != system.state_dim())
    throw DimensionError("state has length " + std::to_string(x.size()) + ", expected " +
                         std::to_string(system.state_dim()));
  Matrix out(system.state_dim(), system.mode_count());
  for (int i = 0; i < system.mode_count(); ++i) out.col(i) = system.mode(i) * x;
  return out;
}

RolloutResult euler_rollout(const ProblemSpec& spec, const Matrix& u) {
  check_shape(spec, u);
  const int K = spec.steps();
  const double h = spec.step_length();
  const auto& sys = spec.system();

  RolloutResult r;
  r.trajectory.times.resize(K + 1);
  r.trajectory.states.resize(K + 1, spec.state_dim());

  Vector x = spec.initial_state();
  r.trajectory.states.row(0) = x.transpose();
  r.trajectory.times[0] = 0.0;
  double psi_sum = 0.0;
  for (int k = 0; k < K; ++k) {
    const Vector drift = blended_drift(sys, x, u.row(k));
    x += h * drift;
    r.trajectory.states.row(k + 1) = x.transpose();
    r.trajectory.times[k + 1] = (k + 1) * h;
    psi_sum += psi_value(spec.regularizer(), u.row(k).transpose());
  }
  r.terminal_cost = x.dot(spec.terminal_weight() * x);
  r.reg_cost = spec.lambda() * h * psi_sum;
  r.total_cost = r.terminal_cost + r.reg_cost;
  return r;
}

RolloutResult euler_rollout(const ProblemSpec& spec, const ControlSequence& u) {
  return euler_rollout(spec, u.values());
}

double total_cost(const ProblemSpec& spec, const Matrix& u) { return euler_rollout(spec, u).total_cost; }

CostAndGradient cost_and_gradient(const ProblemSpec& spec, const Matrix& u) {
  CostAndGradient out{euler_rollout(spec, u), Matrix(spec.steps(), spec.mode_count())};
  const int K = spec.steps();
  const double h = spec.step_length();
  const double lh = spec.lambda() * h;
  const auto& sys = spec.system();
  const Matrix& states = out.rollout.trajectory.states;

  // p holds the costate p[k+1] on entry to iteration k.
  Vector p = 2.0 * (spec.terminal_weight() * states.row(K).transpose());
  for (int k = K - 1; k >= 0; --k) {
    const Vector x = states.row(k).transpose();
    const Vector dpsi = psi_gradient(spec.regularizer(), u.row(k).transpose());
    Vector transported = p;
    for (int i = 0; i < sys.mode_count(); ++i) {
      const Vector ax = sys.mode(i) * x;
      out.gradient(k, i) = h * ax.dot(p) + lh * dpsi[i];
      if (u(k, i) != 0.0) transported += h * u(k, i) * (sys.mode(i).transpose() * p);
    }
    p = std::move(transported);
  }
  return out;
}

Matrix adjoint_gradient(const ProblemSpec& spec, const Matrix& u) { return cost_and_gradient(spec, u).gradient; }

Matrix adjoint_gradient(const ProblemSpec& spec, const ControlSequence& u) {
  return adjoint_gradient(spec, u.values());
}

Vector simulate_plant(const SwitchedSystem& system, const Eigen::Ref<const Vector>& x0, int mode,
                      double duration, int substeps) {
  if (mode < 1 || mode > system.mode_count())
    throw InvalidModeError("mode " + std::to_string(mode) + " is outside 1.." + std::to_string(system.mode_count()));
  if (x0.size() != system.state_dim()) throw DimensionError("initial state has wrong length");
  if (!(duration > 0.0)) throw ValidationError("duration must be positive");
  if (substeps < 1) throw ValidationError("substeps must be positive");

  const Matrix& A = system.mode(mode - 1);
  const double dt = duration / substeps;
  Vector x = x0;
  for (int s = 0; s < substeps; ++s) {
    const Vector k1 = A * x;
    const Vector k2 = A * (x + 0.5 * dt * k1);
    const Vector k3 = A * (x + 0.5 * dt * k2);
    const Vector k4 = A * (x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

Vector advance_plant(const SwitchedSystem& system, const Eigen::Ref<const Vector>& x, int mode, double h,
                     PlantIntegrator integrator, int substeps) {
  if (integrator == PlantIntegrator::Rk4) return simulate_plant(system, x, mode, h, substeps);
  if (mode < 1 || mode > system.mode_count())
    throw InvalidModeError("mode " + std::to_string(mode) + " is outside 1.." + std::to_string(system.mode_count()));
  if (x.size() != system.state_dim()) throw DimensionError("state has wrong length");
  if (!(h > 0.0)) throw ValidationError("duration must be positive");
  const Vector ax = system.mode(mode - 1) * x;
  Vector next = x;
  next += h * ax;
  return next;
}

}  // namespace swsig
