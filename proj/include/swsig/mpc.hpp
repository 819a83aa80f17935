#pragma once

#include <stdexcept>
#include <vector>

#include "swsig/solver.hpp"

namespace swsig {

struct MpcConfig {
  ProblemSpec spec;  // initial_state() is the plant's initial condition
  int sim_steps = 80;
  SolverConfig solver = default_solver();
  bool warm_start = true;
  PlantIntegrator plant = PlantIntegrator::Euler;
  int plant_substeps = kDefaultPlantSubsteps;  // Rk4 only

  static SolverConfig default_solver() {
    SolverConfig c;
    c.restarts = 30;
    return c;
  }
};

struct MpcStepSummary {
  int applied_mode = 0;  // one-based
  double relaxed_cost = 0.0;
  double relaxed_terminal_cost = 0.0;
  double rounded_terminal_cost = 0.0;
  double discreteness_residual = 0.0;
  int iterations = 0;  // summed over restarts
  int restart0_iterations = 0;
};

struct MpcTrace {
  Vector times;        // sim_steps+1 samples
  Matrix plant_states; // (sim_steps+1) x n
  ModeSequence applied_modes;
  std::vector<MpcStepSummary> steps;
  Vector state_norms;
};

/// Thrown when a horizon solve fails; carries the trace recorded up to that step.
class MpcAborted : public std::runtime_error {
 public:
  MpcAborted(MpcTrace partial, int failed_step, const std::string& reason);

  const MpcTrace& partial_trace() const { return partial_; }
  int failed_step() const { return failed_step_; }

 private:
  MpcTrace partial_;
  int failed_step_;
};

/**
 * Receding-horizon loop: solve the K-step problem from the measured state, apply
 * the first rounded mode to the plant for one period h, repeat.
 * Warm starts shift the previous relaxed solution by one step and repeat its last row.
 */
MpcTrace run_mpc(const MpcConfig& config);

}  // namespace swsig
