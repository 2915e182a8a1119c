#pragma once

// Uniform Cartesian lattices and piecewise-constant grid functions on them.
// Cells are indexed row-major (last axis fastest); cell k along axis a spans
// [lo_a + k h, lo_a + (k+1) h).

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace gagliardo {

using Point = Eigen::VectorXd;

struct Grid {
  Eigen::VectorXd lo;
  double h = 1.0;
  Eigen::VectorXi cells;

  int dimension() const { return static_cast<int>(lo.size()); }
  Eigen::Index size() const { return cells.size() == 0 ? 0 : cells.prod(); }
  double cell_volume() const { return std::pow(h, dimension()); }
  Eigen::VectorXd hi() const { return lo + h * cells.cast<double>(); }

  Eigen::VectorXi coords(Eigen::Index flat) const {
    Eigen::VectorXi c(dimension());
    for (int a = dimension() - 1; a >= 0; --a) {
      c[a] = static_cast<int>(flat % cells[a]);
      flat /= cells[a];
    }
    return c;
  }

  Eigen::Index flat(const Eigen::VectorXi& c) const {
    Eigen::Index f = 0;
    for (int a = 0; a < dimension(); ++a) f = f * cells[a] + c[a];
    return f;
  }

  Point midpoint(Eigen::Index flat_index) const {
    return lo + h * (coords(flat_index).cast<double>().array() + 0.5).matrix();
  }

  /// True when the cell touches the outer boundary of the lattice box.
  bool on_boundary(Eigen::Index flat_index) const {
    const Eigen::VectorXi c = coords(flat_index);
    for (int a = 0; a < dimension(); ++a)
      if (c[a] == 0 || c[a] == cells[a] - 1) return true;
    return false;
  }

  void validate() const {
    if (dimension() < 1) throw std::invalid_argument("Grid: dimension must be >= 1");
    if (cells.size() != lo.size()) throw std::invalid_argument("Grid: cells/lo dimension mismatch");
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("Grid: spacing must be positive");
    if ((cells.array() < 1).any()) throw std::invalid_argument("Grid: every axis needs >= 1 cell");
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.h == b.h && a.lo.size() == b.lo.size() && a.lo == b.lo && a.cells == b.cells;
  }
};

/// Smallest lattice with spacing h and origin `anchor + k h` covering [lo, hi],
/// enlarged by `pad` cells on every side.
Grid lattice_covering(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, double h,
                      const Eigen::VectorXd& anchor, int pad = 2);

/// Nonnegative, compactly supported function sampled as one value per cell.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(Grid grid, Eigen::ArrayXd values);

  const Grid& grid() const { return grid_; }
  const Eigen::ArrayXd& values() const { return values_; }
  int dimension() const { return grid_.dimension(); }
  double h() const { return grid_.h; }

  /// Checks nonnegativity, finiteness and zero boundary cells; throws with the
  /// offending flat cell index.
  void validate() const;

 private:
  Grid grid_;
  Eigen::ArrayXd values_;
};

/// Embeds u into a larger lattice shifted by whole cells: cell c of u lands at
/// c + offset + margin of the result, which has `margin` extra zero cells on
/// both sides of every axis.
GridFunction shift_cells(const GridFunction& u, const Eigen::VectorXi& offset, int margin);

/// Two-to-one coarsening onto the lattice with spacing 2h anchored at the same
/// lower corner, by fourth-order interpolation to the coarse cell midpoints
/// (clamped at zero). Odd axes gain one zero cell first.
GridFunction coarsen(const GridFunction& u);

}  // namespace gagliardo
