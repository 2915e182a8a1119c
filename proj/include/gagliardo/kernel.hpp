#pragma once

// Integrals of power kernels over the complement of a domain, computed along
// rays: for each direction the radial integral over {r > 0 : x + r w not in d}
// is exact, and directions are summed with a DirectionRule (n = 1 needs only
// w = -1, +1, so everything is closed form there).

#include "gagliardo/constants.hpp"
#include "gagliardo/geometry.hpp"

namespace gagliardo {

constexpr int kDefaultDirections = 256;
constexpr double kBoundaryExclusion = 1e-9;

/// F(x) = integral over R^n \ d of |x - y|^{-n-s} dy, s = sigma p.
double tail_kernel(const Domain& d, const Point& x, const FracParams& params,
                   int directions = kDefaultDirections);

/// Same integral for an arbitrary exponent s > 0.
double tail_integral(const Domain& d, const Point& x, double s,
                     int directions = kDefaultDirections);

/// Pointwise Loss-Sloane weight
///   m_alpha(x) = (2 pi^{(n-1)/2} Gamma((1+alpha)/2) / Gamma((N+alpha)/2))^{1/alpha}
///                * (integral over S^{n-1} of d_w(x)^{-alpha} dw)^{-1/alpha},
/// with N = n unless `big_n` is given.
double m_alpha(const Domain& d, const Point& x, double alpha, int directions = kDefaultDirections,
               int big_n = 0);

struct Comparison {
  double lhs = 0.0;
  double rhs = 0.0;
  /// Quadrature uncertainty of lhs - rhs (0 for closed forms).
  double error = 0.0;
};

/// lhs = F(x); rhs = (1/s) integral over S^{n-1} of d_w(x)^{-s} dw.
Comparison hardy_pointwise_bound(const Domain& d, const Point& x, const FracParams& params,
                                 int directions = kDefaultDirections);

/// lhs = integral over d* of |x|^{-alpha}; rhs = integral over d of |x|^{-alpha}; alpha < n.
Comparison lemma_decrease_inside(const Domain& d, double alpha, int directions = 4096);

/// lhs = integral over R^n \ d of |x|^{-alpha}; rhs = same over R^n \ d*; alpha > n.
Comparison lemma_decrease_outside(const Domain& d, double alpha, int directions = 4096);

}  // namespace gagliardo
