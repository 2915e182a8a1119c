#pragma once

// Open sets of finite measure in R^n: analytic primitives, disjoint unions of
// them, and boolean cell masks. Provides Lebesgue measure, the centered ball
// of equal measure (Schwarz symmetrization), membership and line/ray queries.

#include "gagliardo/grid.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gagliardo {

/// Open interval (a, b); one-dimensional only.
struct Interval {
  double a = 0.0;
  double b = 0.0;
};

struct Ball {
  Point center;
  double radius = 0.0;
};

/// Open axis-aligned box.
struct Box {
  Point lo;
  Point hi;
};

/// Union of the open cells flagged in `mask` (row-major over `grid`).
struct GridMask {
  Grid grid;
  std::vector<std::uint8_t> mask;
};

using Shape = std::variant<Interval, Ball, Box, GridMask>;

/// Parameter interval (lo, hi) of a line x + t*omega lying inside the domain.
struct Chord {
  double lo;
  double hi;
};

class Domain {
 public:
  static Domain interval(double a, double b);
  static Domain ball(Point center, double radius);
  static Domain box(Point lo, Point hi);
  static Domain grid_mask(Grid grid, std::vector<std::uint8_t> mask);
  /// Union of pairwise-disjoint domains (nested unions are flattened).
  static Domain union_of(const std::vector<Domain>& members);
  /// The empty set in R^n: measure zero, indicator identically zero.
  static Domain empty(int dimension);

  int dimension() const { return dimension_; }
  bool is_empty() const { return parts_.empty(); }
  const std::vector<Shape>& parts() const { return parts_; }

 private:
  Domain(int dimension, std::vector<Shape> parts);
  void validate_disjoint() const;

  int dimension_ = 1;
  std::vector<Shape> parts_;
};

/// Open ball centered at the origin with the measure of the source domain.
struct SymmetrizedBall {
  int dimension = 1;
  double radius = 0.0;

  bool empty() const { return radius <= 0.0; }
  Domain as_domain() const;
};

double measure(const Domain& d);
SymmetrizedBall symmetrize(const Domain& d);
bool contains(const Domain& d, const Point& x);

/// Axis-aligned bounding box of the closure, as (lo, hi).
std::pair<Point, Point> bounding_box(const Domain& d);

/// Sorted, merged parameter intervals where x + t*omega lies in the domain.
std::vector<Chord> line_chords(const Domain& d, const Point& x, const Point& omega);

/// inf{|t| : x + t*omega not in d}; both signs of t count.
double exit_distance(const Domain& d, const Point& x, const Point& omega);

/// Euclidean distance from an interior point to the complement (exact for the
/// analytic shapes, ray-sampled for masks). Throws when x is outside.
double distance_to_boundary(const Domain& d, const Point& x);

struct SymDiffResult {
  double value = 0.0;
  /// "exact" for closed forms, otherwise a description of the resolution used.
  std::string method;
};

/// |d triangle d*| with its evaluation method.
SymDiffResult sym_diff_measure_detailed(const Domain& d);
double sym_diff_measure(const Domain& d);

/// True when the domain is (a union consisting of) a single ball or interval
/// centered at the origin.
bool is_centered_ball(const Domain& d);

Domain domain_from_json(const nlohmann::json& j);
nlohmann::json domain_to_json(const Domain& d);

}  // namespace gagliardo
