#pragma once

#include <Eigen/Core>

namespace swsig {

/// Euclidean projection onto {u : u >= 0, sum u = 1} by sort-and-threshold.
Eigen::VectorXd project_simplex(const Eigen::Ref<const Eigen::VectorXd>& v);

struct VertexPick {
  int mode;         // one-based index of the closest vertex
  double residual;  // ||u - e_mode||_1
};

/// Closest vertex by largest entry, smallest index on ties. u must be on the simplex within 1e-6.
VertexPick nearest_vertex(const Eigen::Ref<const Eigen::VectorXd>& u);

}  // namespace swsig
