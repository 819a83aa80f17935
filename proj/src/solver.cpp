#include "swsig/solver.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "swsig/errors.hpp"
#include "swsig/simplex.hpp"

namespace swsig {

void SolverConfig::validate() const {
  if (max_iters < 1) throw ValidationError("max_iters must be positive");
  if (!(grad_tol > 0.0)) throw ValidationError("grad_tol must be positive");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw ValidationError("armijo_c must lie in (0,1)");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw ValidationError("backtrack_factor must lie in (0,1)");
  if (!(initial_step > 0.0)) throw ValidationError("initial_step must be positive");
  if (restarts < 1) throw ValidationError("restarts must be positive");
  if (!(discreteness_tol > 0.0)) throw ValidationError("discreteness_tol must be positive");
  if (max_backtracks < 1) throw ValidationError("max_backtracks must be positive");
}

std::vector<int> SolveReport::iterations_per_restart() const {
  std::vector<int> out;
  for (const auto& r : restarts) out.push_back(r.iterations);
  return out;
}

std::vector<bool> SolveReport::converged() const {
  std::vector<bool> out;
  for (const auto& r : restarts) out.push_back(r.converged);
  return out;
}

int SolveReport::total_iterations() const {
  int total = 0;
  for (const auto& r : restarts) total += r.iterations;
  return total;
}

Matrix project_rows(const Matrix& v) {
  Matrix out(v.rows(), v.cols());
  for (Eigen::Index k = 0; k < v.rows(); ++k) out.row(k) = project_simplex(v.row(k).transpose()).transpose();
  return out;
}

double discreteness_residual(const Regularizer& reg, const Matrix& u) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < u.rows(); ++k) worst = std::max(worst, psi_value(reg, u.row(k).transpose()));
  return worst;
}

ModeSequence round_to_modes(const ControlSequence& u) {
  std::vector<int> modes(static_cast<std::size_t>(u.steps()));
  for (int k = 0; k < u.steps(); ++k)
    modes[static_cast<std::size_t>(k)] = nearest_vertex(u.values().row(k).transpose()).mode - 1;
  return ModeSequence(std::move(modes), u.modes());
}

Vector inner_maximize(const Eigen::Ref<const Vector>& rho, double lambda, const Regularizer&) {
  if (rho.size() < 1) throw DimensionError("rho is empty");
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  Eigen::Index best = 0;
  rho.maxCoeff(&best);
  return Vector::Unit(rho.size(), best);
}

namespace {

// Uniform on (0,1) from the top 53 bits; independent of the standard library's distributions.
double uniform_open(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

Matrix dirichlet_rows(int rows, int cols, std::mt19937_64& rng) {
  Matrix u(rows, cols);
  for (int k = 0; k < rows; ++k) {
    for (int i = 0; i < cols; ++i) u(k, i) = -std::log(uniform_open(rng));
    u.row(k) /= u.row(k).sum();
  }
  return project_rows(u);
}

double simplex_violation(const Matrix& u) {
  double worst = std::max(0.0, -u.minCoeff());
  for (Eigen::Index k = 0; k < u.rows(); ++k) worst = std::max(worst, std::abs(u.row(k).sum() - 1.0));
  return worst;
}

struct RestartOutcome {
  RestartStats stats;
  Matrix u;
};

RestartOutcome descend(const ProblemSpec& spec, const SolverConfig& cfg, Matrix u) {
  RestartOutcome out;
  auto& st = out.stats;
  const auto fail = [&]() {
    st.diverged = true;
    st.converged = false;
    st.final_cost = std::numeric_limits<double>::infinity();
    out.u = std::move(u);
    return std::move(out);
  };

  CostAndGradient cur;
  try {
    cur = cost_and_gradient(spec, u);
  } catch (const DomainError&) {
    return fail();
  }
  if (!std::isfinite(cur.rollout.total_cost) || !cur.gradient.allFinite()) return fail();
  if (cfg.record_history) {
    st.cost_history.push_back(cur.rollout.total_cost);
    st.max_simplex_violation = simplex_violation(u);
  }

  for (int it = 0; it < cfg.max_iters; ++it) {
    double alpha = cfg.initial_step;
    bool accepted = false;
    Matrix cand;
    double cand_cost = 0.0;
    for (int b = 0; b < cfg.max_backtracks; ++b) {
      cand = project_rows(u - alpha * cur.gradient);
      cand_cost = total_cost(spec, cand);
      const double decrease = (cur.gradient.array() * (cand - u).array()).sum();
      if (std::isfinite(cand_cost) && cand_cost <= cur.rollout.total_cost + cfg.armijo_c * decrease) {
        accepted = true;
        break;
      }
      alpha *= cfg.backtrack_factor;
    }
    st.iterations = it + 1;
    if (!accepted) break;  // stalled at rounding level; not counted as converged

    const double mapping = (u - cand).cwiseAbs().maxCoeff() / alpha;
    u = std::move(cand);
    cur = cost_and_gradient(spec, u);
    if (!std::isfinite(cur.rollout.total_cost) || !cur.gradient.allFinite()) return fail();
    if (cfg.record_history) {
      st.cost_history.push_back(cur.rollout.total_cost);
      st.max_simplex_violation = std::max(st.max_simplex_violation, simplex_violation(u));
    }
    if (mapping < cfg.grad_tol) {
      st.converged = true;
      break;
    }
  }
  st.final_cost = cur.rollout.total_cost;
  out.u = std::move(u);
  return out;
}

}  // namespace

SolveReport solve_relaxed(const ProblemSpec& spec, const SolverConfig& config,
                          const std::optional<ControlSequence>& init) {
  config.validate();
  const auto check = validate_assumption1(spec.regularizer());
  if (!check.passed())
    throw ValidationError("regularizer '" + spec.regularizer().name() + "' violates the discreteness assumption");

  const int K = spec.steps();
  const int N = spec.mode_count();
  if (init && (init->steps() != K || init->modes() != N))
    throw DimensionError("initial control sequence has the wrong shape");

  std::vector<RestartOutcome> outcomes;
  outcomes.reserve(static_cast<std::size_t>(config.restarts));
  for (int r = 0; r < config.restarts; ++r) {
    Matrix start;
    if (r == 0) {
      start = init ? init->values() : Matrix::Constant(K, N, 1.0 / N);
    } else {
      std::seed_seq seq{static_cast<std::uint32_t>(config.rng_seed & 0xffffffffu),
                        static_cast<std::uint32_t>(config.rng_seed >> 32), static_cast<std::uint32_t>(r)};
      std::mt19937_64 rng(seq);
      start = dirichlet_rows(K, N, rng);
    }
    outcomes.push_back(descend(spec, config, std::move(start)));
  }

  int best = -1;
  for (int r = 0; r < config.restarts; ++r) {
    const auto& st = outcomes[static_cast<std::size_t>(r)].stats;
    if (st.diverged) continue;
    if (best < 0 || st.final_cost < outcomes[static_cast<std::size_t>(best)].stats.final_cost) best = r;
  }
  if (best < 0) throw SolverError("all " + std::to_string(config.restarts) + " restarts diverged");

  ControlSequence relaxed(outcomes[static_cast<std::size_t>(best)].u);
  const RolloutResult relaxed_roll = euler_rollout(spec, relaxed);
  ModeSequence rounded = round_to_modes(relaxed);
  const RolloutResult rounded_roll = euler_rollout(spec, to_one_hot(rounded));

  const double residual = discreteness_residual(spec.regularizer(), relaxed.values());
  SolveReport rep{std::move(relaxed),
                  std::move(rounded),
                  best,
                  relaxed_roll.total_cost,
                  relaxed_roll.terminal_cost,
                  rounded_roll.terminal_cost,
                  residual,
                  residual < config.discreteness_tol,
                  {}};
  for (auto& o : outcomes) rep.restarts.push_back(std::move(o.stats));
  return rep;
}

}  // namespace swsig
