#include "gagliardo/directions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gagliardo {

GaussRule gauss_legendre(int points) {
  if (points < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  GaussRule rule{Eigen::VectorXd(points), Eigen::VectorXd(points)};
  const double pi = std::numbers::pi;
  for (int i = 0; i < points; ++i) {
    double x = std::cos(pi * (i + 0.75) / (points + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (points == 1) p1 = x, p0 = 1.0;
      dp = points * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

DirectionRule direction_rule(int n, int m) {
  const double pi = std::numbers::pi;
  DirectionRule rule;
  if (n == 1) {
    rule.directions = Eigen::MatrixXd(1, 2);
    rule.directions << -1.0, 1.0;
    rule.weights = Eigen::VectorXd::Ones(2);
    return rule;
  }
  if (m < 4) throw std::invalid_argument("direction_rule: need at least 4 directions");
  if (n == 2) {
    rule.directions.resize(2, m);
    rule.weights = Eigen::VectorXd::Constant(m, 2.0 * pi / m);
    for (int k = 0; k < m; ++k) {
      const double theta = (2.0 * pi * k + pi) / m;
      rule.directions(0, k) = std::cos(theta);
      rule.directions(1, k) = std::sin(theta);
    }
    return rule;
  }
  if (n == 3) {
    const int polar = std::max(2, m / 2);
    const GaussRule gl = gauss_legendre(polar);
    rule.directions.resize(3, polar * m);
    rule.weights.resize(polar * m);
    int col = 0;
    for (int i = 0; i < polar; ++i) {
      const double z = gl.nodes[i];
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int k = 0; k < m; ++k, ++col) {
        const double phi = (2.0 * pi * k + pi) / m;
        rule.directions(0, col) = rho * std::cos(phi);
        rule.directions(1, col) = rho * std::sin(phi);
        rule.directions(2, col) = z;
        rule.weights[col] = gl.weights[i] * 2.0 * pi / m;
      }
    }
    return rule;
  }
  throw std::invalid_argument("direction_rule: only dimensions 1, 2 and 3 are supported");
}

}  // namespace gagliardo
