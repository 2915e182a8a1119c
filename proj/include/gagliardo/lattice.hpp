#pragma once

// Correction constants for the punctured lattice rule
//
//   sum_{k != 0} f(k)  versus  integral f,   f(z) = |g.z|^p |z|^{-n-s},
//
// which is what the pair sum of a smooth function reduces to near the
// diagonal. The difference is the analytically continued lattice sum
// Z(g) = "sum_{k != 0} f(k)"; subtracting h^{n+p-s} Z(g) |grad u|^p per cell
// removes the leading local error of the midpoint rule.

#include "gagliardo/constants.hpp"

#include <Eigen/Dense>

#include <vector>

namespace gagliardo {

class LatticeCorrection {
 public:
  /// Supported for n = 1 and n = 2.
  LatticeCorrection(int n, double p, double s);

  int dimension() const { return n_; }

  /// Z for a gradient direction; only the direction of `g` matters.
  double leading(const Eigen::VectorXd& g) const;

  /// Next term in one dimension: 2 zeta(-beta-2), multiplying
  /// |g|^{p-2} (p(p-1)/2 a^2 + p g b) with a = u''/2, b = u'''/6.
  double second_order() const { return second_; }

  /// The regularized sum by a smooth radial cutoff at lattice radius R:
  /// sum' f(k) eta(|k|/R) - integral f(z) eta(|z|/R) dz, for unit direction `g`.
  static double cutoff_sum(int n, double p, double s, const Eigen::VectorXd& g, double R);

 private:
  int n_;
  double p_;
  double s_;
  double constant_ = 0.0;
  double second_ = 0.0;
  std::vector<double> table_;  // Z on [0, pi/4] for n = 2, general p
};

}  // namespace gagliardo
