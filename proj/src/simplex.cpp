#include "swsig/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "swsig/errors.hpp"

namespace swsig {

namespace {

bool on_simplex(const Eigen::Ref<const Eigen::VectorXd>& v, double tol) {
  if ((v.array() < 0.0).any()) return false;
  return std::abs(v.sum() - 1.0) <= tol;
}

}  // namespace

Eigen::VectorXd project_simplex(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const Eigen::Index n = v.size();
  if (n < 1) throw DimensionError("cannot project an empty vector");
  if (!v.allFinite()) throw ValidationError("projection input has non-finite entries");

  // Already feasible up to rounding: returning the input keeps the map idempotent bit for bit.
  if (on_simplex(v, 1e-14 * static_cast<double>(n))) return v;

  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  double prefix = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    prefix += sorted[static_cast<std::size_t>(j)];
    const double candidate = (prefix - 1.0) / static_cast<double>(j + 1);
    if (sorted[static_cast<std::size_t>(j)] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).max(0.0).matrix();
}

VertexPick nearest_vertex(const Eigen::Ref<const Eigen::VectorXd>& u) {
  if (u.size() < 1) throw DimensionError("empty control vector");
  if (!u.allFinite() || (u.array() < -1e-6).any() || std::abs(u.sum() - 1.0) > 1e-6)
    throw ValidationError("nearest_vertex input is not on the simplex");
  Eigen::Index best = 0;
  u.maxCoeff(&best);
  const double residual = u.cwiseAbs().sum() - std::abs(u[best]) + std::abs(1.0 - u[best]);
  return {static_cast<int>(best) + 1, residual};
}

}  // namespace swsig
