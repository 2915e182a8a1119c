#pragma once

// Quadrature rules on the unit sphere S^{n-1} and on intervals.

#include <Eigen/Dense>

namespace gagliardo {

/// Columns of `directions` are unit vectors; weights sum to |S^{n-1}|.
struct DirectionRule {
  Eigen::MatrixXd directions;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return weights.size(); }
};

/// n = 1: the two points {-1, +1} (weight 1 each, `m` ignored).
/// n = 2: m equispaced angles (2 pi k + pi) / m, trapezoid weights.
/// n = 3: Gauss-Legendre in the polar cosine (m/2 nodes) times m equispaced azimuths.
DirectionRule direction_rule(int n, int m);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussRule gauss_legendre(int points);

}  // namespace gagliardo
