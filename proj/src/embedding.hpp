#pragma once

// A grid function placed on a lattice that covers both its own box and the
// integration domain, with the cells of the domain marked.

#include "gagliardo/constants.hpp"
#include "gagliardo/geometry.hpp"
#include "gagliardo/grid.hpp"

#include <vector>

namespace gagliardo::detail {

struct Embedding {
  Grid grid;
  Eigen::ArrayXd values;
  std::vector<std::uint8_t> in_region;
  std::vector<Eigen::Index> region;   // cells whose midpoint lies in the domain
  std::vector<Eigen::Index> support;  // region cells with a positive value
};

/// Midpoint in d and the cell inside the closure of d (corners pulled inward by 1e-9 h).
bool cell_inside(const Domain& d, const Grid& g, Eigen::Index flat);

/// True when the five-point stencil of every axis stays inside the region.
bool stencil_in_region(const Embedding& e, Eigen::Index flat);

/// With `clip`, positive cells outside the domain are cleared; otherwise they throw.
Embedding embed(const GridFunction& u, const Domain& d, bool clip);

/// |m|^{-n-s} on integer offsets, flattened like the grid with nonnegative offsets.
struct KernelTable {
  int n = 1;
  Eigen::VectorXi extent;
  std::vector<double> values;

  double operator()(const Eigen::VectorXi& a, const Eigen::VectorXi& b) const {
    Eigen::Index f = 0;
    for (int k = 0; k < n; ++k) f = f * extent[k] + std::abs(a[k] - b[k]);
    return values[static_cast<std::size_t>(f)];
  }
};

KernelTable kernel_table(const Grid& grid, double s);

/// Fourth-order central gradient at a cell; cells outside the grid read as zero.
Eigen::VectorXd gradient(const Grid& grid, const Eigen::ArrayXd& values, Eigen::Index flat);

}  // namespace gagliardo::detail
