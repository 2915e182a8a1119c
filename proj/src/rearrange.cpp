#include "gagliardo/rearrange.hpp"

#include "gagliardo/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gagliardo {

RadialProfile::RadialProfile(int dimension, double cell_volume, std::vector<double> levels)
    : dimension_(dimension), cell_volume_(cell_volume), levels_(std::move(levels)) {
  if (dimension_ < 1) throw std::invalid_argument("RadialProfile: dimension must be >= 1");
  if (!(cell_volume_ > 0.0)) throw std::invalid_argument("RadialProfile: cell volume must be positive");
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (!(levels_[k] > 0.0) || !std::isfinite(levels_[k]))
      throw std::invalid_argument("RadialProfile: level " + std::to_string(k) +
                                  " is not a positive finite number");
    if (k > 0 && levels_[k] > levels_[k - 1])
      throw std::invalid_argument("RadialProfile: levels must be non-increasing");
  }
}

double RadialProfile::breakpoint(std::size_t k) const {
  return std::pow(volume_at(k) / alpha_n(dimension_), 1.0 / dimension_);
}

std::vector<double> RadialProfile::breakpoints() const {
  std::vector<double> r(levels_.size() + 1);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = breakpoint(k);
  return r;
}

double RadialProfile::level_at(double r) const {
  const double v = alpha_n(dimension_) * std::pow(std::abs(r), dimension_);
  const double k = std::floor(v / cell_volume_);
  if (k >= static_cast<double>(levels_.size())) return 0.0;
  return levels_[static_cast<std::size_t>(k)];
}

double RadialProfile::interpolate(double r) const {
  if (levels_.empty()) return 0.0;
  const double x = alpha_n(dimension_) * std::pow(std::abs(r), dimension_) / cell_volume_;
  const auto K = static_cast<double>(levels_.size());
  if (x >= K + 1.0) return 0.0;
  auto node = [&](std::size_t k) -> double {
    if (k == 0) return levels_.front();
    if (k > levels_.size()) return 0.0;
    const double above = k < levels_.size() ? levels_[k] : 0.0;
    return 0.5 * (levels_[k - 1] + above);
  };
  const double k = std::floor(x);
  const auto i = static_cast<std::size_t>(k);
  const double w = x - k;
  if (w == 0.0) return node(i);
  return (1.0 - w) * node(i) + w * node(i + 1);
}

double distribution(const GridFunction& u, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("distribution: t must be positive");
  const auto count = (u.values() > t).count();
  return static_cast<double>(count) * u.grid().cell_volume();
}

double distribution(const RadialProfile& u, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("distribution: t must be positive");
  const auto count = std::count_if(u.levels().begin(), u.levels().end(),
                                   [t](double v) { return v > t; });
  return u.volume_at(static_cast<std::size_t>(count));
}

RadialProfile rearrange(const GridFunction& u) {
  std::vector<Eigen::Index> order;
  for (Eigen::Index i = 0; i < u.values().size(); ++i) {
    const double v = u.values()[i];
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("rearrange: negative or non-finite value at cell " +
                                  std::to_string(i));
    if (v > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return u.values()[a] > u.values()[b];
  });
  std::vector<double> levels(order.size());
  std::transform(order.begin(), order.end(), levels.begin(),
                 [&](Eigen::Index i) { return u.values()[i]; });
  return RadialProfile(u.dimension(), u.grid().cell_volume(), std::move(levels));
}

namespace {

double norm_of(const double* begin, const double* end, double weight, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("lp_norm: q must be >= 1");
  if (std::isinf(q)) {
    double m = 0.0;
    for (const double* v = begin; v != end; ++v) m = std::max(m, std::abs(*v));
    return m;
  }
  double acc = 0.0;
  for (const double* v = begin; v != end; ++v) acc += std::pow(std::abs(*v), q);
  return std::pow(acc * weight, 1.0 / q);
}

}  // namespace

double lp_norm(const GridFunction& u, double q) {
  // Summing the positive values in descending order makes the result agree
  // bit for bit with the rearranged profile.
  const RadialProfile sorted = rearrange(u);
  return lp_norm(sorted, q);
}

double lp_norm(const RadialProfile& u, double q) {
  const auto& l = u.levels();
  return norm_of(l.data(), l.data() + l.size(), u.cell_volume(), q);
}

Grid centered_grid(int dimension, double radius, double h) {
  if (!(radius > 0.0) || !(h > 0.0))
    throw std::invalid_argument("centered_grid: radius and spacing must be positive");
  if (dimension == 1) {
    const double cells = std::ceil(2.0 * radius / h - 1e-9);
    const double h1 = 2.0 * radius / cells;
    const int pad = 2;
    Grid g{Eigen::VectorXd::Constant(1, -radius - pad * h1), h1,
           Eigen::VectorXi::Constant(1, static_cast<int>(cells) + 2 * pad)};
    return g;
  }
  const Eigen::VectorXd r = Eigen::VectorXd::Constant(dimension, radius);
  return lattice_covering(-r, r, h, Eigen::VectorXd::Zero(dimension), 2);
}

GridFunction sample_profile(const RadialProfile& profile, const Grid& grid) {
  if (grid.dimension() != profile.dimension())
    throw std::invalid_argument("sample_profile: dimension mismatch");
  Eigen::ArrayXd values(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    values[i] = profile.interpolate(grid.midpoint(i).norm());
  return GridFunction(grid, std::move(values));
}

}  // namespace gagliardo
