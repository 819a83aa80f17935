#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "swsig/dynamics.hpp"
#include "swsig/model.hpp"

namespace swsig {

struct SolverConfig {
  int max_iters = 2000;
  double grad_tol = 1e-8;  // on ||u - P(u - a g)||_inf / a
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  double initial_step = 1.0;
  int restarts = 10;
  std::uint64_t rng_seed = 0;
  double discreteness_tol = 1e-3;
  int max_backtracks = 60;
  bool record_history = false;

  void validate() const;
};

struct RestartStats {
  int iterations = 0;
  bool converged = false;
  bool diverged = false;  // non-finite cost; restart discarded
  double final_cost = 0.0;
  std::vector<double> cost_history;   // only with record_history
  double max_simplex_violation = 0.0;  // only with record_history
};

struct SolveReport {
  ControlSequence best_relaxed;
  ModeSequence best_rounded;
  int best_restart = 0;
  double relaxed_cost = 0.0;           // total cost of best_relaxed
  double relaxed_terminal_cost = 0.0;
  double rounded_terminal_cost = 0.0;  // re-rolled one-hot sequence
  double discreteness_residual = 0.0;  // max_k psi(u[k]) before rounding
  bool discrete = false;               // residual < discreteness_tol
  std::vector<RestartStats> restarts;

  std::vector<int> iterations_per_restart() const;
  std::vector<bool> converged() const;
  int total_iterations() const;
};

/**
 * Multistart projected gradient descent with Armijo backtracking over the
 * product of K simplices, followed by nearest-vertex rounding.
 *
 * Restart 0 starts from `init` when given, otherwise from the barycenter; later
 * restarts start from seeded uniform-Dirichlet rows. The lowest-cost restart wins
 * (ties to the lower index). Throws SolverError if every restart diverges and
 * ValidationError if the regularizer fails the sampled vertex-vanishing check.
 */
SolveReport solve_relaxed(const ProblemSpec& spec, const SolverConfig& config,
                          const std::optional<ControlSequence>& init = std::nullopt);

/// Maximizer of sum_i (rho_i u_i - lambda psi_i(u_i)) over the simplex: the vertex at argmax rho.
Vector inner_maximize(const Eigen::Ref<const Vector>& rho, double lambda, const Regularizer& reg);

/// Row-wise simplex projection.
Matrix project_rows(const Matrix& v);

/// max_k psi(u[k]).
double discreteness_residual(const Regularizer& reg, const Matrix& u);

/// Nearest-vertex rounding of each row.
ModeSequence round_to_modes(const ControlSequence& u);

}  // namespace swsig
