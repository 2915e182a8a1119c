#pragma once

// Distribution function and symmetric decreasing rearrangement of nonnegative
// grid functions.
//
// The rearrangement keeps every cell value: sorted in descending order, the
// k-th value occupies the radial shell whose enclosed volume runs over
// [k c, (k+1) c), c = h^n. Level sets of the result are therefore centered
// balls whose measure equals the distribution function of the input exactly.

#include "gagliardo/grid.hpp"

#include <vector>

namespace gagliardo {

class RadialProfile {
 public:
  RadialProfile() = default;
  /// `levels` must be positive and non-increasing.
  RadialProfile(int dimension, double cell_volume, std::vector<double> levels);

  int dimension() const { return dimension_; }
  double cell_volume() const { return cell_volume_; }
  const std::vector<double>& levels() const { return levels_; }
  std::size_t shells() const { return levels_.size(); }

  /// Volume enclosed by shell boundary k, exactly k * cell_volume.
  double volume_at(std::size_t k) const { return static_cast<double>(k) * cell_volume_; }
  /// Radius of shell boundary k, (k c / alpha_n)^{1/n}.
  double breakpoint(std::size_t k) const;
  std::vector<double> breakpoints() const;
  double support_radius() const { return breakpoint(levels_.size()); }

  /// Piecewise-constant shell value at radius r (0 beyond the support).
  double level_at(double r) const;

  /// Continuous reading used for resampling: linear in the enclosed volume
  /// between the nodes V = 0 -> v_1, V = k c -> (v_k + v_{k+1}) / 2 and
  /// V = (K+1) c -> 0. At the shell boundaries it agrees with the average of
  /// the two adjacent levels.
  double interpolate(double r) const;

 private:
  int dimension_ = 1;
  double cell_volume_ = 1.0;
  std::vector<double> levels_;
};

/// mu_u(t) = |{u > t}|, t > 0.
double distribution(const GridFunction& u, double t);
double distribution(const RadialProfile& u, double t);

RadialProfile rearrange(const GridFunction& u);

/// Cell-volume (resp. shell-volume) weighted L^q norm; q = infinity allowed.
double lp_norm(const GridFunction& u, double q);
double lp_norm(const RadialProfile& u, double q);

/// Lattice on which rearranged functions over the centered ball of radius R
/// are sampled: in 1-D the spacing is adjusted so that +-R are cell edges, in
/// higher dimensions the origin is a cell corner.
Grid centered_grid(int dimension, double radius, double h);

/// Samples the interpolated profile at the cell midpoints of `grid`.
GridFunction sample_profile(const RadialProfile& profile, const Grid& grid);

}  // namespace gagliardo
