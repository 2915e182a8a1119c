#include "doctest.h"
#include "gagliardo/experiments.hpp"
#include "gagliardo/seminorm.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace gagliardo;

namespace {

Point pt(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

double hat(double x) { return std::max(0.0, 1.0 - 4.0 * std::abs(x)); }

template <typename F>
GridFunction sample_1d(F f, double lo, double hi, int cells) {
  const double h = (hi - lo) / cells;
  Grid g{Eigen::VectorXd::Constant(1, lo), h, Eigen::VectorXi::Constant(1, cells)};
  Eigen::ArrayXd v(cells);
  for (int i = 0; i < cells; ++i) v[i] = f(g.midpoint(i)[0]);
  return GridFunction(g, v);
}

// Whole-space energy of the hat function as 2 * int_0^inf z^{-1-s} G(z) dz with
// G(z) = int |u(x+z) - u(x)|^p dx, integrated piecewise between the kinks.
double hat_fullspace_oracle(double sigma, double p) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double s = sigma * p;
  auto G = [&](double z) {
    std::vector<double> b = {-0.25 - z, -z, 0.25 - z, -0.25, 0.0, 0.25};
    std::sort(b.begin(), b.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
      if (b[i + 1] > b[i])
        acc += GK::integrate([&](double x) { return std::pow(std::abs(hat(x + z) - hat(x)), p); },
                             b[i], b[i + 1], 0, 0);
    return acc;
  };
  double I = 0.0;
  const double zb[] = {0.0, 0.125, 0.25, 0.5};
  for (int i = 0; i < 3; ++i)
    I += GK::integrate([&](double z) { return std::pow(z, -1.0 - s) * G(z); }, zb[i], zb[i + 1], 15, 1e-14);
  // Beyond z = 1/2 the supports are disjoint: G(z) = 2 int u^p = 1 / (p + 1).
  I += 1.0 / (p + 1.0) * std::pow(0.5, -s) / s;
  return 2.0 * I;
}

// Cross term of the hat against (-1, 1) with the closed-form tail.
double hat_cross_oracle(double sigma, double p) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double s = sigma * p;
  auto f = [&](double x) {
    return std::pow(hat(x), p) * (std::pow(1 - x, -s) + std::pow(1 + x, -s)) / s;
  };
  return GK::integrate(f, -0.25, 0.0, 0, 0) + GK::integrate(f, 0.0, 0.25, 0, 0);
}

// Whole-space p = 2 energy of the radial bump eta(|x| / eps) in the plane from
// 2 A(2, sigma) int |xi|^{2 sigma} |u^(xi)|^2 d xi, with the unitary Fourier
// transform written as a Hankel transform.
double bump_fourier_oracle_2d(double sigma, double eps) {
  using G = boost::math::quadrature::gauss<double, 30>;
  const double pi = std::numbers::pi;
  auto uhat = [&](double k) {
    double acc = 0.0;
    const int pieces = 40;
    for (int j = 0; j < pieces; ++j)
      acc += G::integrate([&](double r) { return eta(r / eps) * boost::math::cyl_bessel_j(0, k * r) * r; },
                          eps * j / pieces, eps * (j + 1) / pieces);
    return acc;
  };
  const double A = pi * std::tgamma(1 - sigma) / (sigma * std::pow(4.0, sigma) * std::tgamma(1 + sigma));
  const double kmax = 200.0 / eps;
  double I = 0.0;
  for (int i = 0; i < static_cast<int>(kmax); ++i)
    I += G::integrate([&](double k) { const double v = uhat(k); return std::pow(k, 2 * sigma + 1) * v * v; },
                      kmax * i / static_cast<int>(kmax), kmax * (i + 1) / static_cast<int>(kmax));
  return 2 * A * 2 * pi * I;
}

GridFunction smooth_random(std::mt19937_64& rng, double h) {
  // Sum of two or three bumps of random height and width inside (-1, 1).
  const int terms = 2 + static_cast<int>(uniform01(rng) * 2);
  std::vector<std::array<double, 3>> b;
  for (int k = 0; k < terms; ++k) {
    const double eps = 0.15 + 0.25 * uniform01(rng);
    const double c = (1.0 - eps) * (2 * uniform01(rng) - 1);
    b.push_back({c, eps, 0.5 + uniform01(rng)});
  }
  return sample_1d([&](double x) {
    double v = 0.0;
    for (auto [c, e, a] : b) v += a * eta(std::abs(x - c) / e);
    return v;
  }, -1.0, 1.0, static_cast<int>(2.0 / h));
}

}  // namespace

TEST_CASE("constant functions have zero energy on their plateau") {
  const GridFunction u = sample_1d([](double x) { return std::abs(x) < 1 ? 1.0 : 0.0; }, -1.25, 1.25, 40);
  const FracParams params{1, 0.4, 2.0};
  CHECK(lattice_energy(u, Domain::interval(-1, 1), params) == 0.0);
  CHECK(energy_domain(u, Domain::interval(-1, 1), params).value == 0.0);
  CHECK(energy_domain(u, Domain::interval(-1, 1), FracParams{1, 0.4, 1.5}).value == 0.0);
}

TEST_CASE("hat function against an independent quadrature") {
  for (auto [sigma, p] : {std::pair{0.3, 2.0}, std::pair{0.3, 1.5}}) {
    const FracParams params{1, sigma, p};
    const double full = hat_fullspace_oracle(sigma, p);
    const double oracle = full - 2 * hat_cross_oracle(sigma, p);
    const GridFunction u = sample_1d(hat, -1, 1, 256);
    const EnergyResult e = energy_domain(u, Domain::interval(-1, 1), params);
    CHECK(std::abs(e.value - oracle) <= 3 * e.error_estimate);
    const EnergyResult f = energy_fullspace(u, params, Domain::interval(-1, 1));
    CHECK(std::abs(f.value - full) <= 3 * f.error_estimate);
  }
}

TEST_CASE("planar bump against its Fourier representation") {
  const double sigma = 0.7, eps = 0.5;
  const double oracle = bump_fourier_oracle_2d(sigma, eps);
  const Domain disk = Domain::ball(pt({0, 0}), 1);
  for (double h : {1.0 / 32, 1.0 / 64}) {
    const GridFunction u = build_bump({pt({0, 0}), eps}, domain_grid(disk, h));
    const EnergyResult f = energy_fullspace(u, FracParams{2, sigma, 2}, disk);
    CHECK(std::abs(f.value - oracle) <= f.error_estimate);
  }
}

TEST_CASE("scaling law") {
  // u(x / 2) on 2 Omega at twice the spacing is the same lattice data, so the
  // identity E = 2^{n - s} E holds to rounding.
  const FracParams params{1, 0.6, 2.0};
  const GridFunction u = sample_1d([](double x) { return eta(std::abs(x - 0.1) / 0.4); }, -1, 1, 128);
  const GridFunction v = sample_1d([](double x) { return eta(std::abs(x / 2 - 0.1) / 0.4); }, -2, 2, 128);
  const EnergyResult a = energy_domain(u, Domain::interval(-1, 1), params);
  const EnergyResult b = energy_domain(v, Domain::interval(-2, 2), params);
  const double factor = std::pow(2.0, 1 - params.s());
  CHECK(b.value == doctest::Approx(factor * a.value).epsilon(1e-12));
  CHECK(b.error_estimate == doctest::Approx(factor * a.error_estimate).epsilon(1e-9));

  const FracParams planar{2, 0.7, 1.5};
  const Domain d1 = Domain::box(pt({-1, -1}), pt({1, 1}));
  const Domain d2 = Domain::box(pt({-2, -2}), pt({2, 2}));
  const GridFunction w1 = build_bump({pt({0.1, 0}), 0.5}, domain_grid(d1, 1.0 / 16));
  const GridFunction w2 = build_bump({pt({0.2, 0}), 1.0}, domain_grid(d2, 1.0 / 8));
  CHECK(energy_domain(w2, d2, planar).value ==
        doctest::Approx(std::pow(2.0, 2 - planar.s()) * energy_domain(w1, d1, planar).value).epsilon(1e-12));
}

TEST_CASE("whole-space energy does not depend on the hull") {
  const FracParams params{1, 0.3, 2.0};
  const GridFunction u = sample_1d(hat, -1, 1, 256);
  const EnergyResult a = energy_fullspace(u, params, Domain::interval(-1, 1));
  const EnergyResult b = energy_fullspace(shift_cells(u, Eigen::VectorXi::Zero(1), 128), params, Domain::interval(-2, 2));
  CHECK(std::abs(a.value - b.value) <= a.error_estimate + b.error_estimate);
}

TEST_CASE("translation and reflection") {
  const FracParams params{1, 0.45, 1.7};
  const GridFunction u = sample_1d([](double x) { return eta(std::abs(x - 0.3) / 0.5) + 0.5 * eta(std::abs(x + 0.5) / 0.3); },
                                   -1, 1.3, 184);
  const Domain d = Domain::interval(-1, 1.3);
  const double h = u.h();
  const EnergyResult base = energy_domain(u, d, params);
  const GridFunction shifted = shift_cells(u, Eigen::VectorXi::Constant(1, 7), 8);
  const EnergyResult moved = energy_domain(shifted, Domain::interval(-1 + 7 * h, 1.3 + 7 * h), params);
  CHECK(moved.value == doctest::Approx(base.value).epsilon(1e-10));
  CHECK(energy_fullspace(shifted, params, Domain::interval(-2 + 7 * h, 3 + 7 * h)).value ==
        doctest::Approx(energy_fullspace(u, params, Domain::interval(-2, 3)).value).epsilon(1e-10));

  Eigen::ArrayXd rev = u.values().reverse();
  Grid g = u.grid();
  g.lo[0] = -1.3;
  const EnergyResult mirrored = energy_domain(GridFunction(g, rev), Domain::interval(-1.3, 1), params);
  CHECK(mirrored.value == doctest::Approx(base.value).epsilon(1e-10));
}

TEST_CASE("cross term far from the boundary") {
  // Bound from F <= 2 * 99^{-s} / s on the support.
  const FracParams params{1, 0.6, 2.0};
  const GridFunction u = sample_1d([](double x) { return eta(std::abs(x) / 0.9); }, -1, 1, 128);
  const Domain d = Domain::interval(-100, 100);
  const double up = std::pow(lp_norm(u, 2), 2);
  const double c = cross_term(u, d, params);
  CHECK(c <= 2 * std::pow(99.0, -1.2) / 1.2 * up);
  CHECK(c >= 2 * std::pow(101.0, -1.2) / 1.2 * up);
}

TEST_CASE("cross term of a plateau near the boundary") {
  const FracParams params{1, 0.5, 2.0};
  const double b = 1.0, delta = 0.125;
  const GridFunction u = sample_1d([&](double x) { return (x > b - delta && x < b - delta / 2) ? 1.0 : 0.0; },
                                   -1.25, 1.25, 160);
  const double up = std::pow(lp_norm(u, 2), 2);
  CHECK(cross_term(u, Domain::interval(-1, b), params) >= up * std::pow(delta, -1.0) / 1.0 * (1 - 1e-12));
}

TEST_CASE("splitting: whole space equals domain plus twice the cross term") {
  const FracParams params{1, 0.6, 2.0};
  const GridFunction u = sample_1d([](double x) { return eta(std::abs(x - 0.2) / 0.5); }, -1, 1, 256);
  const Domain d = Domain::interval(-1, 1);
  const EnergyResult full = energy_fullspace(u, params, d);
  CHECK(full.value == doctest::Approx(energy_domain(u, d, params).value + 2 * cross_term(u, d, params)).epsilon(1e-14));
}

TEST_CASE("error estimates shrink under refinement") {
  const FracParams params{1, 0.6, 2.0};
  for (double c : {0.0, 0.3}) {
    auto f = [c](double x) { return eta(std::abs(x - c) / 0.5); };
    const EnergyResult a = energy_domain(sample_1d(f, -1, 1, 128), Domain::interval(-1, 1), params);
    const EnergyResult b = energy_domain(sample_1d(f, -1, 1, 256), Domain::interval(-1, 1), params);
    CHECK(b.error_estimate < 0.7 * a.error_estimate);
    CHECK(std::abs(a.value - b.value) <= a.error_estimate);
  }
}

TEST_CASE("rearranged energies") {
  const FracParams params{1, 0.6, 2.0};
  // A symmetric decreasing function sampled on the centered lattice is its own rearrangement.
  const Grid g = centered_grid(1, 1.0, 1.0 / 128);
  Eigen::ArrayXd v(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) v[i] = eta(std::abs(g.midpoint(i)[0]) / 0.6);
  const GridFunction u(g, v);
  const Domain target = Domain::interval(-1, 1);
  const EnergyResult a = energy_rearranged(u, target, params);
  const EnergyResult b = energy_domain(u, target, params);
  CHECK(std::abs(a.value - b.value) <= a.error_estimate + b.error_estimate);

  // Three-cell profile: the RadialProfile path against the symmetric grid
  // function built from the same profile at the same resolution.
  Grid line{Eigen::VectorXd::Zero(1), 1.0, Eigen::VectorXi::Constant(1, 3)};
  const RadialProfile r = rearrange(GridFunction(line, Eigen::Array3d(3, 1, 2)));
  const FracParams low{1, 0.3, 2.0};
  const double h = 1.0 / 32;
  const EnergyResult via_profile = energy_fullspace(r, low, h);
  const double R = r.support_radius() + (4 + std::ceil((r.breakpoint(r.shells() + 1) - r.support_radius()) / h - 2)) * h;
  const GridFunction symmetric = sample_profile(r, centered_grid(1, R, h));
  const EnergyResult via_grid = energy_fullspace(symmetric, low, Domain::interval(-R, R));
  CHECK(std::abs(via_profile.value - via_grid.value) <= via_profile.error_estimate + via_grid.error_estimate);
}

TEST_CASE("Almgren-Lieb on random smooth functions") {
  std::mt19937_64 rng(99);
  const FracParams params{1, 0.6, 2.0};
  for (int trial = 0; trial < 5; ++trial) {
    const GridFunction u = smooth_random(rng, 1.0 / 128);
    const EnergyResult a = energy_fullspace(u, params, Domain::interval(-1, 1));
    const EnergyResult b = energy_fullspace(rearrange(u), params, u.h());
    CHECK(a.value >= b.value - 2 * (a.error_estimate + b.error_estimate));
  }
}

TEST_CASE("Rayleigh quotient") {
  const FracParams params{1, 0.3, 2.0};
  const Domain d = Domain::interval(-1, 1);
  const GridFunction u = sample_1d([](double x) { return eta(std::abs(x - 0.2) / 0.6); }, -1, 1, 128);
  const double q = rayleigh_quotient(u, d, params);
  const GridFunction cu(u.grid(), 3.7 * u.values());
  CHECK(rayleigh_quotient(cu, d, params) == doctest::Approx(q).epsilon(1e-13));
  CHECK(sobolev_exponent(params) == doctest::Approx(5.0));
  CHECK(sobolev_exponent(FracParams{2, 0.5, 2}) == doctest::Approx(4.0));

  // Whole-space quotient is invariant under dilation.
  const GridFunction v = sample_1d([](double x) { return eta(std::abs(x / 2 - 0.2) / 0.6); }, -2, 2, 128);
  const double qu = energy_fullspace(u, params, d).value / std::pow(lp_norm(u, 5.0), 2);
  const double qv = energy_fullspace(v, params, Domain::interval(-2, 2)).value / std::pow(lp_norm(v, 5.0), 2);
  CHECK(qv == doctest::Approx(qu).epsilon(1e-12));

  CHECK_THROWS(rayleigh_quotient(u, d, FracParams{1, 0.3, 1.5}));
  CHECK_THROWS(rayleigh_quotient(GridFunction(u.grid(), Eigen::ArrayXd::Zero(u.grid().size())), d, params));
}

TEST_CASE("preconditions") {
  const FracParams params{1, 0.6, 2.0};
  const GridFunction u = sample_1d([](double x) { return eta(std::abs(x) / 0.5); }, -1, 1, 64);
  CHECK_THROWS_AS(energy_domain(u, Domain::interval(0, 1), params), std::invalid_argument);
  CHECK_NOTHROW(lattice_energy(u, Domain::interval(0, 1), params, true));
  CHECK_THROWS_AS(energy_fullspace(u, params, Domain::interval(-0.25, 0.25)), std::invalid_argument);
  CHECK_THROWS(energy_domain(u, Domain::interval(-1, 1), FracParams{1, 1.2, 2.0}));
  Grid g3{Eigen::VectorXd::Constant(3, -1.0), 0.25, Eigen::VectorXi::Constant(3, 8)};
  CHECK_THROWS(energy_domain(GridFunction(g3, Eigen::ArrayXd::Zero(g3.size())),
                             Domain::ball(Point::Zero(3), 1.0), FracParams{3, 0.5, 2.0}));
}
