#include "swsig/oracle.hpp"

#include <cmath>
#include <limits>

#include "swsig/errors.hpp"

namespace swsig {

namespace {

struct Search {
  const ProblemSpec& spec;
  std::vector<int> prefix;
  std::vector<int> best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::size_t evaluated = 0;
  std::vector<double>* costs = nullptr;

  void visit(const Vector& x, int depth) {
    const auto& sys = spec.system();
    if (depth == spec.steps()) {
      const double cost = x.dot(spec.terminal_weight() * x);
      ++evaluated;
      if (costs) costs->push_back(cost);
      // Strict comparison keeps the lexicographically first minimizer; NaN never wins.
      if (cost < best_cost) {
        best_cost = cost;
        best = prefix;
      }
      return;
    }
    for (int i = 0; i < sys.mode_count(); ++i) {
      const Vector ax = sys.mode(i) * x;
      Vector next = x;
      next += spec.step_length() * ax;
      prefix[static_cast<std::size_t>(depth)] = i;
      visit(next, depth + 1);
    }
  }
};

}  // namespace

EnumerationResult enumerate_discrete(const ProblemSpec& spec, std::size_t max_evals) {
  const double required = std::pow(static_cast<double>(spec.mode_count()), spec.steps());
  if (required > static_cast<double>(max_evals)) throw BudgetError(required, max_evals);

  std::vector<double> costs;
  Search s{spec, std::vector<int>(static_cast<std::size_t>(spec.steps()), 0), {}};
  const bool keep = required <= static_cast<double>(kHistogramLimit);
  if (keep) {
    costs.reserve(static_cast<std::size_t>(required));
    s.costs = &costs;
  }
  s.visit(spec.initial_state(), 0);
  if (s.best.empty()) throw SolverError("every enumerated sequence produced a non-finite cost");

  EnumerationResult out;
  out.best_modes = ModeSequence(s.best, spec.mode_count());
  out.best_terminal_cost = s.best_cost;
  out.evaluated = s.evaluated;
  if (keep) out.cost_histogram = std::move(costs);
  return out;
}

GridMaximum grid_search_inner(const Eigen::Ref<const Vector>& rho, double lambda, const Regularizer& reg,
                              double step) {
  const Eigen::Index n = rho.size();
  if (n < 1) throw DimensionError("rho is empty");
  if (n > 3) throw DimensionError("grid search supports at most 3 modes");
  if (!(step > 0.0 && step <= 0.1)) throw ValidationError("grid step must lie in (0, 0.1]");

  const int m = static_cast<int>(std::lround(1.0 / step));
  const auto objective = [&](const Vector& u) {
    double f = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) f += rho[i] * u[i] - lambda * reg.term(u[i]);
    return f;
  };

  GridMaximum best{Vector::Zero(n), -std::numeric_limits<double>::infinity()};
  Vector u(n);
  const auto consider = [&]() {
    const double f = objective(u);
    if (f > best.value) {
      best.value = f;
      best.point = u;
    }
  };

  if (n == 1) {
    u[0] = 1.0;
    consider();
    return best;
  }
  for (int a = 0; a <= m; ++a) {
    if (n == 2) {
      u[0] = static_cast<double>(a) / m;
      u[1] = static_cast<double>(m - a) / m;
      consider();
      continue;
    }
    for (int b = 0; a + b <= m; ++b) {
      u[0] = static_cast<double>(a) / m;
      u[1] = static_cast<double>(b) / m;
      u[2] = static_cast<double>(m - a - b) / m;
      consider();
    }
  }
  return best;
}

}  // namespace swsig
