#include "swsig/mpc.hpp"

#include <optional>
#include <string>

#include "swsig/errors.hpp"

namespace swsig {

MpcAborted::MpcAborted(MpcTrace partial, int failed_step, const std::string& reason)
    : std::runtime_error("MPC aborted at step " + std::to_string(failed_step) + ": " + reason),
      partial_(std::move(partial)),
      failed_step_(failed_step) {}

namespace {

MpcTrace truncated(const MpcTrace& t, int samples) {
  MpcTrace out;
  out.times = t.times.head(samples);
  out.plant_states = t.plant_states.topRows(samples);
  out.state_norms = t.state_norms.head(samples);
  const auto& modes = t.applied_modes.zero_based();
  out.applied_modes = ModeSequence(modes, t.applied_modes.mode_count());
  out.steps = t.steps;
  return out;
}

ControlSequence shift_forward(const ControlSequence& u) {
  Matrix next(u.steps(), u.modes());
  const int K = u.steps();
  if (K > 1) next.topRows(K - 1) = u.values().bottomRows(K - 1);
  next.row(K - 1) = u.values().row(K - 1);
  return ControlSequence(std::move(next));
}

}  // namespace

MpcTrace run_mpc(const MpcConfig& config) {
  if (config.sim_steps < 1) throw ValidationError("sim_steps must be at least 1");
  if (config.plant_substeps < 1) throw ValidationError("plant substeps must be positive");
  config.solver.validate();

  const auto& base = config.spec;
  const int n = base.state_dim();
  const double h = base.step_length();

  MpcTrace trace;
  trace.times.resize(config.sim_steps + 1);
  trace.plant_states.resize(config.sim_steps + 1, n);
  trace.state_norms.resize(config.sim_steps + 1);

  Vector x = base.initial_state();
  trace.times[0] = 0.0;
  trace.plant_states.row(0) = x.transpose();
  trace.state_norms[0] = x.norm();

  std::vector<int> modes;
  std::optional<ControlSequence> warm;
  for (int k = 0; k < config.sim_steps; ++k) {
    const ProblemSpec spec = base.with_initial_state(x);
    SolverConfig cfg = config.solver;
    cfg.rng_seed = config.solver.rng_seed + static_cast<std::uint64_t>(k);

    std::optional<SolveReport> rep;
    try {
      rep.emplace(solve_relaxed(spec, cfg, config.warm_start ? warm : std::nullopt));
    } catch (const SolverError& e) {
      trace.applied_modes = ModeSequence(modes, base.mode_count());
      throw MpcAborted(truncated(trace, k + 1), k, e.what());
    }

    const int mode = rep->best_rounded[0] + 1;
    modes.push_back(mode - 1);
    x = advance_plant(base.system(), x, mode, h, config.plant, config.plant_substeps);

    trace.times[k + 1] = (k + 1) * h;
    trace.plant_states.row(k + 1) = x.transpose();
    trace.state_norms[k + 1] = x.norm();
    trace.steps.push_back({mode, rep->relaxed_cost, rep->relaxed_terminal_cost, rep->rounded_terminal_cost,
                           rep->discreteness_residual, rep->total_iterations(), rep->restarts.front().iterations});
    if (config.warm_start) warm = shift_forward(rep->best_relaxed);
  }
  trace.applied_modes = ModeSequence(std::move(modes), base.mode_count());
  return trace;
}

}  // namespace swsig
