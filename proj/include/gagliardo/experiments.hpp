#pragma once

// The bump family u_eps = eta((x - x_eps) / eps), the rearrangement
// counterexample sweep, the comparison-estimate ratio suite and an exploratory
// descent on the Sobolev Rayleigh quotient.

#include "gagliardo/bump.hpp"
#include "gagliardo/kernel.hpp"
#include "gagliardo/seminorm.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gagliardo {

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct BumpSpec {
  Point center;
  double epsilon = 0.1;
};

/// Minimum number of cells across the bump diameter.
constexpr double kBumpResolution = 16.0;

/// Samples eta((x - center) / eps) at the cell midpoints of `grid`.
GridFunction build_bump(const BumpSpec& spec, const Grid& grid);

/// Lattice with spacing h covering the bounding box of d plus two cells per
/// side, anchored at the lower corner of the box.
Grid domain_grid(const Domain& d, double h);

enum class Placement { Boundary, Center, Origin, Auto, Explicit };

std::string to_string(Placement p);
Placement placement_from_string(const std::string& name);

/// Bump center for the given placement:
///  boundary - at distance eps from the boundary (right end of a 1-D domain,
///             +e1 side of a ball or box);
///  center   - x with |x| = R/2 along e1, R the radius of d*;
///  origin   - the origin;
///  auto     - the lattice node maximizing F(x) subject to dist(x, boundary) >= 2 eps;
///  explicit - `point`.
Point place_bump(const Domain& d, Placement placement, double eps, const FracParams& params,
                 double h, const std::optional<Point>& point = std::nullopt);

struct SweepRecord {
  double epsilon = 0.0;
  double h = 0.0;
  Point center;
  EnergyResult lhs;  ///< E over d of u_eps
  EnergyResult rhs;  ///< E over d* of u*_eps
  double cross_domain = 0.0;        ///< cross term of u_eps against d
  double cross_domain_error = 0.0;
  double cross_star = 0.0;          ///< cross term of u*_eps against d*
  double cross_star_error = 0.0;
  double gap = 0.0;                 ///< rhs - lhs
  double gap_error = 0.0;           ///< |gap_h - gap_2h|
  EnergyResult full_domain;         ///< lhs + 2 cross_domain
  EnergyResult full_star;           ///< rhs + 2 cross_star
  bool flagged = false;             ///< gap > threshold * gap_error
};

struct SweepReport {
  FracParams params;
  std::string placement;
  double threshold = 3.0;
  std::vector<SweepRecord> records;  ///< decreasing epsilon
  bool slopes_fitted = false;
  double slope_domain = 0.0;  ///< d log(cross_domain) / d log eps
  double slope_star = 0.0;    ///< d log(cross_star) / d log eps
  bool downward_closed = true;
  std::vector<std::string> warnings;

  bool any_flagged() const;
};

constexpr double kVerdictThreshold = 3.0;

/// Runs the sweep on a lattice of spacing h (default eps_min / 16).
SweepReport counterexample_sweep(const Domain& d, const FracParams& params,
                                 std::vector<double> epsilons, Placement placement,
                                 const std::optional<Point>& point = std::nullopt, double h = 0.0);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct TailPair {
  double F0 = 0.0;       ///< F(0) over d
  double Ftilde0 = 0.0;  ///< F(0) over d*
};

TailPair finequality_check(const Domain& d, const FracParams& params);

struct RatioCase {
  std::string label;
  GridFunction u;
  Domain domain;
};

struct RatioSuite {
  std::vector<std::string> labels;
  std::vector<double> numerators;    ///< whole-space energy of u*
  std::vector<double> denominators;  ///< energy of u over its domain
  std::vector<double> ratios;
  double max_ratio = 0.0;
};

/// ratio = E_{R^n}(u*) / E_d(u) per case; requires sigma p > 1.
RatioSuite theorem2_ratio_suite(const std::vector<RatioCase>& cases, const FracParams& params);

constexpr std::uint64_t kCorpusSeed = 20240607;

/// Ten functions on (-1, 1): single bumps at varied centers and widths and
/// sums of two bumps, drawn from mt19937_64(seed), sampled with spacing h.
std::vector<RatioCase> theorem2_corpus(std::uint64_t seed = kCorpusSeed, double h = 1.0 / 128.0,
                                       int count = 10);

struct NormEnergy {
  double lhs = 0.0;  ///< ||u||^2 in L^{2n/(n-2 sigma)}
  double rhs = 0.0;  ///< E_d(u)
};

NormEnergy sobolev_from_hardy_check(const GridFunction& u, const Domain& d,
                                    const FracParams& params);

struct DescentResult {
  std::vector<double> trace;
  GridFunction final_u;
  bool stalled = false;
  int halvings = 0;
};

/// Projected gradient descent on the Rayleigh quotient over nonnegative grid
/// functions supported in d, renormalized in L^{2n/(n-2 sigma)} each step.
/// A step that raises the quotient is halved (at most 10 times per iteration).
DescentResult best_constant_descent(const Domain& d, const FracParams& params, int iterations,
                                    double step, const GridFunction& initial);

/// Centered bump in d on the lattice domain_grid(d, h): center at the middle
/// of the bounding box, radius 0.9 times its distance to the boundary.
GridFunction initial_bump(const Domain& d, double h);

}  // namespace gagliardo
