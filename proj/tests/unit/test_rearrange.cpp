#include "doctest.h"
#include "gagliardo/experiments.hpp"
#include "gagliardo/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace gagliardo;

namespace {

GridFunction line(std::vector<double> values, double h = 1.0, double lo = 0.0) {
  Grid g{Eigen::VectorXd::Constant(1, lo), h, Eigen::VectorXi::Constant(1, static_cast<int>(values.size()))};
  return GridFunction(g, Eigen::Map<Eigen::ArrayXd>(values.data(), static_cast<Eigen::Index>(values.size())));
}

// Nonnegative random function with zero boundary cells and ties.
GridFunction random_function(std::mt19937_64& rng, int n) {
  Grid g;
  g.lo = Eigen::VectorXd::Constant(n, -1.0 + 0.37 * uniform01(rng));
  g.h = n == 1 ? 1.0 / 64 : 1.0 / 16;
  g.cells = Eigen::VectorXi::Constant(n, n == 1 ? 128 : 32);
  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (g.on_boundary(i)) continue;
    const double r = uniform01(rng);
    if (r < 0.3) continue;
    v[i] = r < 0.4 ? 0.5 : 3.0 * uniform01(rng);
  }
  return GridFunction(g, v);
}

std::vector<double> positive_sorted(const GridFunction& u) {
  std::vector<double> out;
  for (double x : u.values())
    if (x > 0) out.push_back(x);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

TEST_CASE("distribution of the three-cell example") {
  const GridFunction u = line({3, 1, 2});
  CHECK(distribution(u, 2.5) == 1.0);
  CHECK(distribution(u, 0.5) == 3.0);
  CHECK(distribution(u, 3.0) == 0.0);
  CHECK(distribution(u, 1.0) == 2.0);
}

TEST_CASE("distribution of a hat function") {
  // mu(t) = 2 (1 - t) for max(0, 1 - |x|).
  for (int cells : {64, 256, 1024}) {
    const double h = 4.0 / cells;
    Grid g{Eigen::VectorXd::Constant(1, -2.0), h, Eigen::VectorXi::Constant(1, cells)};
    Eigen::ArrayXd v(cells);
    for (int i = 0; i < cells; ++i) v[i] = std::max(0.0, 1.0 - std::abs(g.midpoint(i)[0]));
    const GridFunction u(g, v);
    CHECK(std::abs(distribution(u, 0.5) - 1.0) <= 2 * h);
    CHECK(std::abs(distribution(rearrange(u), 0.3) - 1.4) <= 2 * h);
  }
}

TEST_CASE("rearrangement of the three-cell example") {
  const RadialProfile r = rearrange(line({3, 1, 2}));
  REQUIRE(r.shells() == 3);
  CHECK(r.levels() == std::vector<double>{3, 2, 1});
  const auto b = r.breakpoints();
  REQUIRE(b.size() == 4);
  CHECK(b[0] == 0.0);
  CHECK(b[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b[3] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(r.level_at(0.2) == 3);
  CHECK(r.level_at(0.7) == 2);
  CHECK(r.level_at(1.2) == 1);
  CHECK(r.level_at(1.6) == 0);
  CHECK(r.support_radius() == doctest::Approx(1.5));
}

TEST_CASE("norms") {
  const GridFunction u = line({3, 1, 2});
  CHECK(lp_norm(u, 1) == 6.0);
  CHECK(lp_norm(u, INFINITY) == 3.0);
  CHECK(lp_norm(u, 2) == doctest::Approx(std::sqrt(14.0)).epsilon(1e-15));
  CHECK(lp_norm(rearrange(u), 2) == doctest::Approx(std::sqrt(14.0)).epsilon(1e-15));
  CHECK_THROWS(lp_norm(u, 0.5));
}

TEST_CASE("empty and invalid input") {
  const RadialProfile r = rearrange(line({0, 0, 0}));
  CHECK(r.shells() == 0);
  CHECK(r.support_radius() == 0.0);
  CHECK(lp_norm(r, 2) == 0.0);
  CHECK_THROWS_AS(rearrange(line({0, -1, 0})), std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile(1, 1.0, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile(1, 1.0, {1, 0}), std::invalid_argument);
}

TEST_CASE("radial decreasing input is a fixed point") {
  // A symmetric decreasing function on a symmetric 1-D grid: each shell of u*
  // carries the value of the matching cell pair.
  const GridFunction u = line({0, 1, 2, 4, 4, 2, 1, 0}, 0.25, -1.0);
  const RadialProfile r = rearrange(u);
  CHECK(r.levels() == std::vector<double>{4, 4, 2, 2, 1, 1});
  for (Eigen::Index i = 1; i < 7; ++i) {
    const double x = u.grid().midpoint(i)[0];
    CHECK(r.level_at(std::abs(x)) == u.values()[i]);
  }
  // Resampling on the same lattice gives the function back.
  const GridFunction back = sample_profile(r, centered_grid(1, r.support_radius(), 0.25));
  CHECK(positive_sorted(back) == positive_sorted(u));
}

TEST_CASE("interpolation nodes") {
  const RadialProfile r(1, 1.0, {3, 2, 1});
  CHECK(r.interpolate(0.0) == 3.0);
  CHECK(r.interpolate(0.5) == doctest::Approx(2.5));
  CHECK(r.interpolate(1.0) == doctest::Approx(1.5));
  CHECK(r.interpolate(1.5) == doctest::Approx(0.5));
  CHECK(r.interpolate(2.0) == 0.0);
  CHECK(r.interpolate(0.25) == doctest::Approx(2.75));
}

TEST_CASE("randomized rearrangement laws") {
  std::mt19937_64 rng(20240607);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial % 4 == 3 ? 2 : 1;
    const GridFunction u = random_function(rng, n);
    const RadialProfile r = rearrange(u);
    // Equimeasurability: the shell levels are the positive cell values.
    CHECK(r.levels() == positive_sorted(u));
    for (double t : {0.1, 0.5, 1.0, 2.0}) CHECK(distribution(r, t) == distribution(u, t));
    for (double q : {1.0, 2.0}) {
      const double a = lp_norm(u, q);
      CHECK(std::abs(lp_norm(r, q) - a) <= 1e-12 * a);
    }
    CHECK(lp_norm(r, INFINITY) == lp_norm(u, INFINITY));
    // Translation by whole cells leaves u* unchanged.
    const Eigen::VectorXi shift = Eigen::VectorXi::Constant(n, trial % 7 - 3);
    const RadialProfile s = rearrange(shift_cells(u, shift, 4));
    CHECK(s.levels() == r.levels());
    CHECK(s.cell_volume() == r.cell_volume());
  }
}

TEST_CASE("sampled profiles vanish beyond the last interpolation node") {
  const RadialProfile r(2, 1.0 / 256, {5, 4, 4, 3, 1, 1, 0.5});
  const Grid g = centered_grid(2, r.support_radius() + 0.1, 1.0 / 64);
  const GridFunction s = sample_profile(r, g);
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (s.values()[i] > 0) CHECK(g.midpoint(i).norm() < r.breakpoint(r.shells() + 1));
  CHECK(s.values().maxCoeff() <= 5.0);
}
