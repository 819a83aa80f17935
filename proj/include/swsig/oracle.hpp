#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "swsig/model.hpp"

namespace swsig {

inline constexpr std::size_t kDefaultMaxEvals = 1'000'000;
inline constexpr std::size_t kHistogramLimit = 4096;

struct EnumerationResult {
  ModeSequence best_modes;
  double best_terminal_cost = 0.0;
  std::size_t evaluated = 0;
  /// Terminal cost of every sequence in lexicographic order, kept when N^K <= 4096.
  std::optional<std::vector<double>> cost_histogram;
};

/**
 * Exhaustive search over all N^K one-hot sequences of the Euler model. The
 * regularizer vanishes on vertices, so only the terminal cost is compared.
 * Depth-first with the prefix state reused; ties go to the lexicographically
 * smallest sequence. Throws BudgetError when N^K > max_evals.
 */
EnumerationResult enumerate_discrete(const ProblemSpec& spec, std::size_t max_evals = kDefaultMaxEvals);

struct GridMaximum {
  Vector point;
  double value = 0.0;
};

/// Dense barycentric grid search of sum_i (rho_i u_i - lambda psi_i(u_i)) over the simplex, N <= 3.
GridMaximum grid_search_inner(const Eigen::Ref<const Vector>& rho, double lambda, const Regularizer& reg,
                              double step);

}  // namespace swsig
