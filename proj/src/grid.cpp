#include "gagliardo/grid.hpp"

#include <string>
#include <vector>

namespace gagliardo {

Grid lattice_covering(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, double h,
                      const Eigen::VectorXd& anchor, int pad) {
  const int n = static_cast<int>(lo.size());
  if (hi.size() != n || anchor.size() != n)
    throw std::invalid_argument("lattice_covering: dimension mismatch");
  if (!(h > 0.0)) throw std::invalid_argument("lattice_covering: spacing must be positive");
  Grid g{Eigen::VectorXd(n), h, Eigen::VectorXi(n)};
  for (int a = 0; a < n; ++a) {
    const long k0 = static_cast<long>(std::floor((lo[a] - anchor[a]) / h)) - pad;
    const long k1 = static_cast<long>(std::ceil((hi[a] - anchor[a]) / h)) + pad;
    g.lo[a] = anchor[a] + static_cast<double>(k0) * h;
    g.cells[a] = static_cast<int>(std::max<long>(1, k1 - k0));
  }
  return g;
}

GridFunction::GridFunction(Grid grid, Eigen::ArrayXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("GridFunction: expected " + std::to_string(grid_.size()) +
                                " values, got " + std::to_string(values_.size()));
}

void GridFunction::validate() const {
  grid_.validate();
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v))
      throw std::invalid_argument("GridFunction: non-finite value at cell " + std::to_string(i));
    if (v < 0.0)
      throw std::invalid_argument("GridFunction: negative value at cell " + std::to_string(i));
    if (v != 0.0 && grid_.on_boundary(i))
      throw std::invalid_argument("GridFunction: nonzero value on the lattice boundary at cell " +
                                  std::to_string(i));
  }
}

GridFunction shift_cells(const GridFunction& u, const Eigen::VectorXi& offset, int margin) {
  const Grid& g = u.grid();
  const int n = g.dimension();
  if (offset.size() != n) throw std::invalid_argument("shift_cells: offset dimension mismatch");
  if (margin < 0) throw std::invalid_argument("shift_cells: margin must be nonnegative");
  Grid out{g.lo.array() - margin * g.h, g.h, g.cells.array() + 2 * margin};
  Eigen::ArrayXd values = Eigen::ArrayXd::Zero(out.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (u.values()[i] == 0.0) continue;
    const Eigen::VectorXi c = g.coords(i).array() + offset.array() + margin;
    if ((c.array() < 0).any() || (c.array() >= out.cells.array()).any())
      throw std::invalid_argument("shift_cells: support leaves the enlarged lattice");
    values[out.flat(c)] = u.values()[i];
  }
  return GridFunction(std::move(out), std::move(values));
}

namespace {

// Halves one axis of a row-major array by four-point interpolation to the
// midpoint between fine cells 2J and 2J+1; cells beyond the array are zero.
Eigen::ArrayXd halve_axis(const Eigen::ArrayXd& data, std::vector<int>& dims, int axis) {
  const int len = dims[axis];
  const int half = (len + 1) / 2;
  long inner = 1;
  for (std::size_t a = axis + 1; a < dims.size(); ++a) inner *= dims[a];
  long outer = 1;
  for (int a = 0; a < axis; ++a) outer *= dims[a];
  Eigen::ArrayXd out(outer * half * inner);
  auto at = [&](long o, int k, long i) -> double {
    if (k < 0 || k >= len) return 0.0;
    return data[(o * len + k) * inner + i];
  };
  for (long o = 0; o < outer; ++o)
    for (int j = 0; j < half; ++j)
      for (long i = 0; i < inner; ++i) {
        const int k = 2 * j;
        out[(o * half + j) * inner + i] =
            (-at(o, k - 1, i) + 9.0 * at(o, k, i) + 9.0 * at(o, k + 1, i) - at(o, k + 2, i)) /
            16.0;
      }
  dims[axis] = half;
  return out;
}

}  // namespace

GridFunction coarsen(const GridFunction& u) {
  // Two zero cells per side keep the coarse cells aligned with the fine lattice.
  const GridFunction padded = shift_cells(u, Eigen::VectorXi::Zero(u.dimension()), 2);
  const Grid& g = padded.grid();
  std::vector<int> dims(g.cells.data(), g.cells.data() + g.dimension());
  Eigen::ArrayXd data = padded.values();
  for (int a = 0; a < g.dimension(); ++a) data = halve_axis(data, dims, a);
  Grid coarse{g.lo, 2.0 * g.h, Eigen::Map<Eigen::VectorXi>(dims.data(), g.dimension())};
  return GridFunction(std::move(coarse), data.max(0.0));
}

}  // namespace gagliardo
