#pragma once

// The smooth radial cutoff eta: 1 on |x| <= 1/2, 0 on |x| >= 1, C-infinity and
// non-increasing in between.

#include <cmath>

namespace gagliardo {

/// phi(t) = 1 for t <= 0, 0 for t >= 1, e^{-1/(1-t)} / (e^{-1/(1-t)} + e^{-1/t}) between.
inline double smooth_step(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  // Divide through by e^{-1/(1-t)} to avoid underflow near the ends.
  return 1.0 / (1.0 + std::exp(1.0 / (1.0 - t) - 1.0 / t));
}

/// eta as a function of the radius |x|.
inline double eta(double r) { return smooth_step(2.0 * r - 1.0); }

}  // namespace gagliardo
