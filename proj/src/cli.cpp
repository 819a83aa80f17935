#include "swsig/cli.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <filesystem>
#include <optional>

#include "swsig/errors.hpp"
#include "swsig/io.hpp"

namespace swsig {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string problem;
  std::string out = ".";
  std::optional<double> lambda;
  std::optional<int> K;
  std::optional<double> h;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<int> sim_steps;
  std::optional<double> discreteness_tol;
  std::string regularizer;
  int samples = 99;
  std::size_t max_evals = kDefaultMaxEvals;
  bool no_warm_start = false;
  bool oracle_only = false;
};

void add_common(CLI::App* sub, Options& o, bool problem_required) {
  auto* p = sub->add_option("--problem", o.problem, "problem description (JSON)");
  if (problem_required) p->required();
  p->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "output directory")->capture_default_str();
  sub->add_option("--lambda", o.lambda, "regularization weight")->check(CLI::PositiveNumber);
  sub->add_option("--K", o.K, "horizon steps")->check(CLI::PositiveNumber);
  sub->add_option("--h", o.h, "step length [s]")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--restarts", o.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
  sub->add_option("--sim-steps", o.sim_steps, "MPC periods to simulate")->check(CLI::PositiveNumber);
  sub->add_option("--discreteness-tol", o.discreteness_tol, "discreteness certificate threshold")
      ->check(CLI::PositiveNumber);
}

struct Loaded {
  ProblemSpec spec;
  std::uint64_t seed;
};

Loaded load(const Options& o) {
  auto file = parse_problem_file(o.problem);
  ProblemSpec spec = file.spec;
  if (o.K) spec = spec.with_steps(*o.K);
  if (o.h) spec = spec.with_step_length(*o.h);
  if (o.lambda) spec = spec.with_lambda(*o.lambda);
  return {std::move(spec), o.seed.value_or(file.seed)};
}

SolverConfig solver_config(const Options& o, SolverConfig base, std::uint64_t seed) {
  base.rng_seed = seed;
  if (o.restarts) base.restarts = *o.restarts;
  if (o.discreteness_tol) base.discreteness_tol = *o.discreteness_tol;
  return base;
}

RunInfo run_info(const std::string& command, const ProblemSpec& spec, std::uint64_t seed) {
  RunInfo info;
  info.command = command;
  info.regularizer = regularizer_label(spec.regularizer());
  info.lambda = spec.lambda();
  info.steps = spec.steps();
  info.step_length = spec.step_length();
  info.seed = seed;
  return info;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_solve(const Options& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto [spec, seed] = load(o);
  const SolveReport rep = solve_relaxed(spec, solver_config(o, SolverConfig{}, seed));
  const fs::path dir(o.out);
  write_trace_csv(euler_rollout(spec, rep.best_relaxed), rep.best_relaxed, dir / "relaxed.csv");
  const ControlSequence onehot = to_one_hot(rep.best_rounded);
  write_trace_csv(euler_rollout(spec, onehot), onehot, dir / "rounded.csv");
  auto info = run_info("solve", spec, seed);
  info.wall_time_s = seconds_since(t0);
  write_summary(out, info, rep);
  return kExitOk;
}

int cmd_mpc(const Options& o, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto [spec, seed] = load(o);
  MpcConfig cfg{spec};
  cfg.solver = solver_config(o, MpcConfig::default_solver(), seed);
  if (o.sim_steps) cfg.sim_steps = *o.sim_steps;
  cfg.warm_start = !o.no_warm_start;
  const fs::path path = fs::path(o.out) / "mpc_trace.csv";
  auto info = run_info("mpc", spec, seed);
  try {
    const MpcTrace trace = run_mpc(cfg);
    write_trace_csv(trace, path);
    info.wall_time_s = seconds_since(t0);
    write_summary(out, info, trace);
    return kExitOk;
  } catch (const MpcAborted& e) {
    write_trace_csv(e.partial_trace(), path);
    info.wall_time_s = seconds_since(t0);
    write_summary(out, info, e.partial_trace());
    out << "failed_step: " << e.failed_step() << '\n';
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto [spec, seed] = load(o);
  const EnumerationResult res = enumerate_discrete(spec, o.max_evals);
  std::optional<SolveReport> rep;
  if (!o.oracle_only) rep = solve_relaxed(spec, solver_config(o, SolverConfig{}, seed));

  const fs::path dir(o.out);
  const ControlSequence best = to_one_hot(res.best_modes);
  write_trace_csv(euler_rollout(spec, best), best, dir / "enumerate_best.csv");
  if (res.cost_histogram) {
    std::ofstream hist(dir / "enumerate_costs.csv", std::ios::binary | std::ios::trunc);
    if (!hist) throw std::runtime_error("cannot write enumerate_costs.csv");
    hist << "index,terminal_cost\n";
    for (std::size_t i = 0; i < res.cost_histogram->size(); ++i)
      hist << i << ',' << format_number((*res.cost_histogram)[i]) << '\n';
  }
  auto info = run_info("enumerate", spec, seed);
  info.wall_time_s = seconds_since(t0);
  write_summary(out, info, res, rep);
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  Regularizer reg = Regularizer::quadratic_concave();
  if (!o.regularizer.empty())
    reg = regularizer_from_name(o.regularizer);
  else if (!o.problem.empty())
    reg = parse_problem_file(o.problem).spec.regularizer();
  write_summary(out, validate_assumption1(reg, o.samples));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-valued switching signal design for linear switched systems", "swsig"};
  // "-h" is taken by the step-length option.
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "solve the relaxed finite-horizon problem and round it");
  add_common(solve, o, true);

  auto* mpc = app.add_subcommand("mpc", "closed-loop receding-horizon simulation");
  add_common(mpc, o, true);
  mpc->add_flag("--no-warm-start", o.no_warm_start, "start every horizon solve cold");

  auto* enumerate = app.add_subcommand("enumerate", "exhaustive search over all mode sequences");
  add_common(enumerate, o, true);
  enumerate->add_option("--max-evals", o.max_evals, "enumeration budget")->capture_default_str();
  enumerate->add_flag("--oracle-only", o.oracle_only, "skip the optimizer comparison");

  auto* validate = app.add_subcommand("validate-reg", "check a regularizer against the discreteness assumption");
  add_common(validate, o, false);
  validate->add_option("--regularizer", o.regularizer, "quadratic_concave | pnorm:<p> | soav | soav_shifted");
  validate->add_option("--samples", o.samples, "interior grid points")->check(CLI::Range(3, 1 << 24));

  // CLI11 consumes the argument vector back to front.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, out);
    if (mpc->parsed()) return cmd_mpc(o, out, err);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    return cmd_validate(o, out);
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace swsig
