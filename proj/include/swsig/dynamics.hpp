#pragma once

#include "swsig/model.hpp"

namespace swsig {

struct RolloutResult {
  Trajectory trajectory;
  double terminal_cost = 0.0;  // x[K]' Q x[K]
  double reg_cost = 0.0;       // lambda h sum_k psi(u[k])
  double total_cost = 0.0;
};

/// Control-affine vector field: column i is A_i x.
Matrix phi(const SwitchedSystem& system, const Eigen::Ref<const Vector>& x);

/// Euler recursion x[k+1] = x[k] + h Phi(x[k]) u[k] and the discretized cost.
RolloutResult euler_rollout(const ProblemSpec& spec, const ControlSequence& u);

/**
 * Same recursion for an arbitrary K x N matrix. Rows are not required to lie on
 * the simplex (finite differences step off it); psi still needs entries in [0,1].
 */
RolloutResult euler_rollout(const ProblemSpec& spec, const Matrix& u);

double total_cost(const ProblemSpec& spec, const Matrix& u);

/**
 * Gradient of total_cost with respect to every entry of u, by the discrete adjoint
 * of the Euler recursion:
 *   p[K] = 2 Q x[K],  p[k] = p[k+1] + h (sum_i u_i[k] A_i)' p[k+1],
 *   grad row k = h Phi(x[k])' p[k+1] + lambda h psi'(u[k]).
 */
Matrix adjoint_gradient(const ProblemSpec& spec, const ControlSequence& u);
Matrix adjoint_gradient(const ProblemSpec& spec, const Matrix& u);

/// Rollout and gradient from a single forward pass.
struct CostAndGradient {
  RolloutResult rollout;
  Matrix gradient;
};
CostAndGradient cost_and_gradient(const ProblemSpec& spec, const Matrix& u);

inline constexpr int kDefaultPlantSubsteps = 16;

enum class PlantIntegrator {
  Euler,  // one step x + h A x, identical to the prediction model
  Rk4,    // simulate_plant with substeps
};

/// Integrates xdot = A_mode x over `duration` with classical RK4. `mode` is one-based.
Vector simulate_plant(const SwitchedSystem& system, const Eigen::Ref<const Vector>& x0, int mode,
                      double duration, int substeps = kDefaultPlantSubsteps);

/// One sampling period of the plant under a fixed one-based mode.
Vector advance_plant(const SwitchedSystem& system, const Eigen::Ref<const Vector>& x, int mode, double h,
                     PlantIntegrator integrator, int substeps = kDefaultPlantSubsteps);

}  // namespace swsig
