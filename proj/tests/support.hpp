#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the
// code paths it is used to check.

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "swsig/model.hpp"

namespace swsig::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Uniform point on the simplex (normalized exponentials).
inline Eigen::VectorXd random_simplex_point(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> e(1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = e(rng);
  return v / v.sum();
}

/// Simplex point with every entry >= floor, so central differences of width 1e-6 stay inside [0,1].
inline Eigen::VectorXd interior_simplex_point(std::mt19937_64& rng, int n, double floor = 1e-3) {
  for (;;) {
    Eigen::VectorXd v = random_simplex_point(rng, n);
    if (v.minCoeff() >= floor) return v;
  }
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols, double lo, double hi) {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = uniform(rng, lo, hi);
  return m;
}

inline SwitchedSystem random_system(std::mt19937_64& rng, int n, int N, double lo = -5.0, double hi = 5.0) {
  std::vector<Eigen::MatrixXd> modes;
  for (int i = 0; i < N; ++i) modes.push_back(random_matrix(rng, n, n, lo, hi));
  return SwitchedSystem(std::move(modes));
}

inline SwitchedSystem example1_system() {
  Eigen::MatrixXd a1(2, 2), a2(2, 2);
  a1 << -3, 1, 1, 2;
  a2 << 1, -0.5, -3, -5;
  return SwitchedSystem({a1, a2});
}

inline SwitchedSystem example2_system() {
  Eigen::MatrixXd a1(2, 2), a2(2, 2), a3(2, 2);
  a1 << -3, 1, 1, 2;
  a2 << 7, 1, 7, -15;
  a3 << -5, 2, 4, 6;
  return SwitchedSystem({a1, a2, a3});
}

inline Eigen::VectorXd example_xi() { return Eigen::Vector2d(-3.0, 3.0); }

inline ProblemSpec example1_spec(int K = 10) {
  return ProblemSpec(example1_system(), example_xi(), K, 0.1, Eigen::MatrixXd::Identity(2, 2), 1.0,
                     Regularizer::quadratic_concave());
}

inline ProblemSpec example2_spec(int K = 10) {
  return ProblemSpec(example2_system(), example_xi(), K, 0.1, Eigen::MatrixXd::Identity(2, 2), 1e4,
                     Regularizer::quadratic_concave());
}

/// Central finite differences of f at every entry of x.
inline Eigen::MatrixXd central_difference(const std::function<double(const Eigen::MatrixXd&)>& f,
                                          const Eigen::MatrixXd& x, double step = 1e-6) {
  Eigen::MatrixXd g(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      Eigen::MatrixXd plus = x, minus = x;
      plus(r, c) += step;
      minus(r, c) -= step;
      g(r, c) = (f(plus) - f(minus)) / (2.0 * step);
    }
  }
  return g;
}

/// Brute-force nearest point on the simplex (N <= 3) over a barycentric grid of the given spacing.
inline Eigen::VectorXd grid_nearest_on_simplex(const Eigen::VectorXd& v, double step) {
  const int n = static_cast<int>(v.size());
  const int m = static_cast<int>(std::lround(1.0 / step));
  Eigen::VectorXd best(n), u(n);
  double best_d = std::numeric_limits<double>::infinity();
  const auto consider = [&]() {
    const double d = (u - v).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = u;
    }
  };
  if (n == 1) return Eigen::VectorXd::Ones(1);
  for (int a = 0; a <= m; ++a) {
    if (n == 2) {
      u << double(a) / m, double(m - a) / m;
      consider();
      continue;
    }
    for (int b = 0; a + b <= m; ++b) {
      u << double(a) / m, double(b) / m, double(m - a - b) / m;
      consider();
    }
  }
  return best;
}

}  // namespace swsig::testing
