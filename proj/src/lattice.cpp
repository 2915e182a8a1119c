#include "gagliardo/lattice.hpp"

#include "gagliardo/bump.hpp"
#include "gagliardo/directions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gagliardo {

namespace {

constexpr int kTableIntervals = 256;
constexpr double kCutoffRadius = 32.0;

// Integral of |g.omega|^p over the unit sphere.
double angular_moment(int n, double p) {
  const double pi = std::numbers::pi;
  if (n == 1) return 2.0;
  if (n == 2) return 2.0 * std::sqrt(pi) * gamma((p + 1.0) / 2.0) / gamma(p / 2.0 + 1.0);
  if (n == 3) return 4.0 * pi / (p + 1.0);
  throw std::invalid_argument("angular_moment: unsupported dimension");
}

// integral_0^1 eta(t) t^{m-1} dt for m > 0.
double radial_moment(double m) {
  const GaussRule gl = gauss_legendre(64);
  double acc = std::pow(0.5, m) / m;
  for (Eigen::Index i = 0; i < gl.nodes.size(); ++i) {
    const double t = 0.75 + 0.25 * gl.nodes[i];
    acc += 0.25 * gl.weights[i] * eta(t) * std::pow(t, m - 1.0);
  }
  return acc;
}

}  // namespace

double LatticeCorrection::cutoff_sum(int n, double p, double s, const Eigen::VectorXd& g,
                                     double R) {
  const double beta = p - n - s;
  const int K = static_cast<int>(std::ceil(R));
  double sum = 0.0;
  if (n == 1) {
    for (int k = 1; k <= K; ++k) sum += 2.0 * std::pow(k, beta) * eta(k / R);
  } else if (n == 2) {
    for (int i = -K; i <= K; ++i)
      for (int j = -K; j <= K; ++j) {
        if (i == 0 && j == 0) continue;
        const double r = std::hypot(i, j);
        if (r >= R) continue;
        sum += std::pow(std::abs(g[0] * i + g[1] * j), p) * std::pow(r, -n - s) * eta(r / R);
      }
  } else {
    throw std::invalid_argument("cutoff_sum: only n = 1, 2");
  }
  const double integral =
      angular_moment(n, p) * std::pow(R, beta + n) * radial_moment(beta + n);
  return sum - integral;
}

LatticeCorrection::LatticeCorrection(int n, double p, double s) : n_(n), p_(p), s_(s) {
  const double beta = p - n - s;
  if (n == 1) {
    constant_ = 2.0 * riemann_zeta(-beta);
    second_ = 2.0 * riemann_zeta(-beta - 2.0);
    return;
  }
  if (n != 2) throw std::invalid_argument("LatticeCorrection: only n = 1 and n = 2 are supported");
  if (p == 2.0) {
    // sum' (g.k)^2 |k|^{-2-s} = (1/2) sum' |k|^{-s} = 2 zeta(s/2) beta(s/2).
    constant_ = 2.0 * riemann_zeta(s / 2.0) * dirichlet_beta(s / 2.0);
    return;
  }
  table_.resize(kTableIntervals + 1);
  const double quarter = std::numbers::pi / 4.0;
  for (int k = 0; k <= kTableIntervals; ++k) {
    const double theta = quarter * k / kTableIntervals;
    Eigen::Vector2d g(std::cos(theta), std::sin(theta));
    table_[static_cast<std::size_t>(k)] = cutoff_sum(2, p, s, g, kCutoffRadius);
  }
}

double LatticeCorrection::leading(const Eigen::VectorXd& g) const {
  if (n_ == 1 || table_.empty()) return constant_;
  // The lattice is symmetric under the dihedral group of the square: fold the
  // angle into [0, pi/4].
  const double x = std::abs(g[0]);
  const double y = std::abs(g[1]);
  const double theta = std::atan2(std::min(x, y), std::max(x, y));
  const double pos = theta / (std::numbers::pi / 4.0) * kTableIntervals;
  const int k = std::min(kTableIntervals - 1, static_cast<int>(pos));
  const double w = pos - k;
  return (1.0 - w) * table_[static_cast<std::size_t>(k)] +
         w * table_[static_cast<std::size_t>(k + 1)];
}

}  // namespace gagliardo
