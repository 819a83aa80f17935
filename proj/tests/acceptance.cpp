// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance <problems-dir> <scratch-dir>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"
#include "swsig/cli.hpp"
#include "swsig/dynamics.hpp"
#include "swsig/io.hpp"
#include "swsig/mpc.hpp"
#include "swsig/oracle.hpp"
#include "swsig/simplex.hpp"
#include "swsig/solver.hpp"

using namespace swsig;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

fs::path g_problems;
fs::path g_scratch;

Outcome regularizers() {
  const bool q = validate_assumption1(Regularizer::quadratic_concave()).passed();
  const bool p = validate_assumption1(Regularizer::pnorm(0.5)).passed();
  const bool s = validate_assumption1(regularizer_from_name("soav")).passed();
  const bool ss = validate_assumption1(regularizer_from_name("soav_shifted")).passed();

  std::mt19937_64 rng(1001);
  const auto reg = Regularizer::quadratic_concave();
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXd u = testing::random_simplex_point(rng, 2 + static_cast<int>(rng() % 4));
    worst = std::max(worst, std::abs(psi_value(reg, u) - (u.lpNorm<1>() - u.squaredNorm())));
  }
  std::ostringstream d;
  d << "quadratic_concave=" << (q ? "pass" : "fail") << " pnorm:0.5=" << (p ? "pass" : "fail")
    << " soav=" << (s ? "pass" : "fail") << " soav_shifted=" << (ss ? "pass" : "fail")
    << " max_identity_error=" << worst;
  return {q && p && !s && !ss && worst <= 1e-12, d.str()};
}

Outcome gradients() {
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int N = 2 + static_cast<int>(rng() % 2);
    const int K = 1 + static_cast<int>(rng() % 10);
    const auto sys = testing::random_system(rng, n, N, -2.0, 2.0);
    const Vector xi = testing::random_matrix(rng, n, 1, -2.0, 2.0);
    const Matrix M = testing::random_matrix(rng, n, n, -1.0, 1.0);
    const ProblemSpec spec(sys, xi, K, 0.1, M * M.transpose() + Matrix::Identity(n, n),
                           testing::uniform(rng, 0.1, 10.0), Regularizer::quadratic_concave());
    Matrix u(K, N);
    for (int k = 0; k < K; ++k) u.row(k) = testing::interior_simplex_point(rng, N).transpose();
    const Matrix g = adjoint_gradient(spec, u);
    const Matrix fd = testing::central_difference([&](const Matrix& v) { return total_cost(spec, v); }, u);
    worst = std::max(worst, (g - fd).norm() / std::max(fd.norm(), 1e-12));
  }
  std::ostringstream d;
  d << "instances=50 max_relative_error=" << worst;
  return {worst < 1e-5, d.str()};
}

Outcome inner_problem() {
  std::mt19937_64 rng(1003);
  const auto reg = Regularizer::quadratic_concave();
  double worst_value = 0.0, worst_dist = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int N = 2 + t % 2;
    Eigen::VectorXd rho(N);
    do {
      rho = testing::random_matrix(rng, N, 1, -5.0, 5.0);
    } while ((N == 2 && rho[0] == rho[1]) || (N == 3 && (rho[0] == rho[1] || rho[1] == rho[2] || rho[0] == rho[2])));
    const double lambda = std::pow(10.0, testing::uniform(rng, -2.0, 2.0));
    const auto g = grid_search_inner(rho, lambda, reg, 1e-3);
    Eigen::Index best = 0;
    const double top = rho.maxCoeff(&best);
    worst_value = std::max(worst_value, std::abs(g.value - top));
    worst_dist = std::max(worst_dist, (g.point - Eigen::VectorXd::Unit(N, best)).lpNorm<1>());
  }
  std::ostringstream d;
  d << "instances=200 max_value_gap=" << worst_value << " max_l1_to_vertex=" << worst_dist;
  return {worst_value <= 1e-3 && worst_dist <= 1e-2, d.str()};
}

Outcome relaxation_exactness() {
  int exact = 0, close = 0, discrete = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(i));
    const auto sys = testing::random_system(rng, 2, 2, -5.0, 5.0);
    const ProblemSpec spec(sys, testing::example_xi(), 6, 0.1, Matrix::Identity(2, 2), 1.0,
                           Regularizer::quadratic_concave());
    SolverConfig c;
    c.restarts = 10;
    c.rng_seed = static_cast<std::uint64_t>(i);
    const auto rep = solve_relaxed(spec, c);
    const double best = enumerate_discrete(spec).best_terminal_cost;
    const double rel = (rep.rounded_terminal_cost - best) / std::max(std::abs(best), 1e-300);
    worst = std::max(worst, rel);
    if (rel <= 1e-6) ++exact;
    if (rel <= 0.05) ++close;
    if (rep.discrete) ++discrete;
  }
  std::ostringstream d;
  d << "exact=" << exact << "/20 within_5pct=" << close << "/20 discrete=" << discrete
    << "/20 worst_relative_gap=" << worst;
  return {exact >= 16 && close == 20, d.str()};
}

Outcome mpc_example(const std::string& file) {
  const auto problem = parse_problem_file(g_problems / file);
  MpcConfig c{problem.spec};
  c.sim_steps = 80;
  c.solver.rng_seed = problem.seed;
  const auto trace = run_mpc(c);

  const double h = problem.spec.step_length();
  const int at5 = static_cast<int>(std::lround(5.0 / h));
  const double ratio = trace.state_norms[at5] / trace.state_norms[0];

  bool one_hot = trace.applied_modes.size() == 80;
  for (std::size_t k = 0; k < trace.applied_modes.size(); ++k) {
    const int m = trace.applied_modes[k];
    one_hot = one_hot && m >= 0 && m < problem.spec.mode_count();
    const Vector x = trace.plant_states.row(static_cast<int>(k)).transpose();
    const Vector expected = advance_plant(problem.spec.system(), x, m + 1, h, c.plant, c.plant_substeps);
    one_hot = one_hot && trace.plant_states.row(static_cast<int>(k) + 1).transpose() == expected;
  }
  double residual = 0.0;
  for (const auto& s : trace.steps) residual = std::max(residual, s.discreteness_residual);

  std::ostringstream d;
  d << "norm_ratio_at_5s=" << ratio << " one_hot=" << (one_hot ? "yes" : "no")
    << " max_discreteness_residual=" << residual << " final_norm=" << trace.state_norms[80];
  return {ratio < 0.05 && one_hot && residual < 1e-3, d.str()};
}

Outcome projection() {
  std::mt19937_64 rng(1007);
  bool feasible = true, idempotent = true;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int N = 2 + t % 2;
    const Eigen::VectorXd v = testing::random_matrix(rng, N, 1, -1.5, 1.5);
    const Eigen::VectorXd p = project_simplex(v);
    feasible = feasible && p.minCoeff() >= 0.0 && std::abs(p.sum() - 1.0) <= 1e-12;
    idempotent = idempotent && project_simplex(p) == p;
    const Eigen::VectorXd g = testing::grid_nearest_on_simplex(v, 1e-3);
    worst = std::max(worst, (v - p).norm() - (v - g).norm());
    worst = std::max(worst, (p - g).lpNorm<Eigen::Infinity>());
  }
  std::ostringstream d;
  d << "feasible=" << (feasible ? "yes" : "no") << " idempotent=" << (idempotent ? "yes" : "no")
    << " max_grid_deviation=" << worst;
  return {feasible && idempotent && worst <= 2e-3, d.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  struct Run {
    std::vector<std::string> args;
    std::vector<std::string> files;
  };
  const std::string one = (g_problems / "two_mode.json").string();
  const std::string two = (g_problems / "three_mode.json").string();
  const std::vector<Run> runs{
      {{"solve", "--problem", one, "--seed", "5"}, {"relaxed.csv", "rounded.csv"}},
      {{"solve", "--problem", two, "--seed", "5"}, {"relaxed.csv", "rounded.csv"}},
      {{"mpc", "--problem", one, "--seed", "5", "--sim-steps", "30"}, {"mpc_trace.csv"}},
      {{"mpc", "--problem", two, "--seed", "5", "--sim-steps", "30"}, {"mpc_trace.csv"}},
      {{"enumerate", "--problem", one, "--seed", "5"}, {"enumerate_best.csv"}},
  };
  int identical = 0, total = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    std::string contents[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path dir = g_scratch / ("determinism_" + std::to_string(r) + "_" + std::to_string(rep));
      fs::remove_all(dir);
      fs::create_directories(dir);
      auto args = runs[r].args;
      args.push_back("--out");
      args.push_back(dir.string());
      std::ostringstream out, err;
      if (run_cli(args, out, err) != kExitOk) return {false, "run failed: " + err.str()};
      for (const auto& f : runs[r].files) contents[rep] += slurp(dir / f) + '\x1f';
    }
    ++total;
    if (!contents[0].empty() && contents[0] == contents[1]) ++identical;
  }
  return {identical == total, "byte_identical_runs=" + std::to_string(identical) + "/" + std::to_string(total)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <problems-dir> <scratch-dir>\n";
    return 2;
  }
  g_problems = argv[1];
  g_scratch = argv[2];
  fs::create_directories(g_scratch);

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "regularizer correctness", 1.0, regularizers},
      {2, "gradient fidelity", 10.0, gradients},
      {3, "inner maximization at vertices", 30.0, inner_problem},
      {4, "relaxation exactness at desk scale", 120.0, relaxation_exactness},
      {5, "two-mode MPC convergence", 30.0, [] { return mpc_example("two_mode.json"); }},
      {6, "three-mode MPC convergence", 60.0, [] { return mpc_example("three_mode.json"); }},
      {7, "simplex projection", 5.0, projection},
      {8, "CLI determinism", 0.0, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_s <= 0.0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << ") " << timing;
    if (c.budget_s > 0.0) std::cout << " budget=" << c.budget_s << "s";
    std::cout << " | " << o.detail << (in_time ? "" : " | over time budget") << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
