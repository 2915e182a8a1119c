#include "doctest.h"
#include "gagliardo/kernel.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

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

// Integral of |x - y|^{-1-s} over y in (a, b) by double-exponential quadrature;
// b may be infinite.
double power_integral(double x, double a, double b, double s) {
  auto f = [x, s](double y) { return std::pow(std::abs(x - y), -1.0 - s); };
  if (std::isinf(b)) return boost::math::quadrature::exp_sinh<double>().integrate(f, a, b);
  if (std::isinf(a)) return boost::math::quadrature::exp_sinh<double>().integrate(f, a, b);
  return boost::math::quadrature::tanh_sinh<double>().integrate(f, a, b);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("tail kernel on an interval") {
  const Domain d = Domain::interval(-1, 1);
  CHECK(std::abs(tail_integral(d, pt({0}), 0.5) - 4.0) <= 1e-10);
  CHECK(std::abs(power_integral(0, -kInf, -1, 0.5) + power_integral(0, 1, kInf, 0.5) - 4.0) <= 1e-10);
  for (double x : {-0.7, 0.0, 0.3, 0.9})
    for (double s : {0.4, 1.2, 1.9}) {
      const double closed = (std::pow(1 - x, -s) + std::pow(x + 1, -s)) / s;
      const double oracle = power_integral(x, -kInf, -1, s) + power_integral(x, 1, kInf, s);
      CHECK(tail_integral(d, pt({x}), s) == doctest::Approx(closed).epsilon(1e-13));
      CHECK(tail_integral(d, pt({x}), s) == doctest::Approx(oracle).epsilon(1e-9));
    }
  const FracParams params{1, 0.6, 2.0};
  CHECK(tail_kernel(d, pt({0.25}), params) == doctest::Approx(tail_integral(d, pt({0.25}), 1.2)));
}

TEST_CASE("tail kernel on a union of intervals") {
  const Domain d = Domain::union_of({Domain::interval(-1, 0.2), Domain::interval(0.4, 1)});
  for (double s : {0.5, 1.2}) {
    const double oracle = power_integral(0, -kInf, -1, s) + power_integral(0, 0.2, 0.4, s) +
                          power_integral(0, 1, kInf, s);
    CHECK(tail_integral(d, pt({0}), s) == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("tail kernel of the unit disk at its center") {
  const Domain d = Domain::ball(pt({0, 0}), 1);
  for (double s : {0.3, 1.0, 1.7}) CHECK(tail_integral(d, pt({0, 0}), s) == doctest::Approx(2 * std::numbers::pi / s).epsilon(1e-12));
}

TEST_CASE("tail kernel of an off-center point in a disk") {
  // Polar integral around x with exit radius rho(theta) from the law of cosines.
  const Domain d = Domain::ball(pt({0, 0}), 1);
  const double x0 = 0.5, s = 1.2;
  auto rho = [&](double th) {
    const double c = x0 * std::cos(th);
    return -c + std::sqrt(c * c + 1 - x0 * x0);
  };
  const double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                            [&](double th) { return std::pow(rho(th), -s) / s; }, 0.0, 2 * std::numbers::pi, 10, 1e-14);
  CHECK(tail_integral(d, pt({x0, 0}), s) == doctest::Approx(oracle).epsilon(1e-10));
  // Direction refinement converges.
  const double coarse = tail_integral(d, pt({x0, 0}), s, 64);
  const double fine = tail_integral(d, pt({x0, 0}), s, 128);
  CHECK(std::abs(fine - oracle) <= std::abs(coarse - oracle) + 1e-13);
}

TEST_CASE("tail kernel grows as the domain shrinks") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 0.5);
  for (int trial = 0; trial < 30; ++trial) {
    const double a = u(rng), b = u(rng);
    const Domain big = Domain::ball(pt({0, 0}), 1);
    const Domain small = Domain::box(pt({-a, -b}), pt({b, a}));
    const Point x = pt({0.01 * trial / 30.0, 0});
    CHECK(tail_integral(small, x, 1.1) >= tail_integral(big, x, 1.1));
    const Domain i1 = Domain::interval(-1 - a, 1 + b);
    const Domain i2 = Domain::interval(-1, 1);
    CHECK(tail_integral(i2, pt({0.1}), 0.7) >= tail_integral(i1, pt({0.1}), 0.7));
  }
}

TEST_CASE("tail kernel preconditions") {
  const Domain d = Domain::interval(-1, 1);
  CHECK_THROWS_AS(tail_integral(d, pt({2}), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(tail_integral(d, pt({1 - 1e-12}), 1.0), std::domain_error);
  CHECK_THROWS_AS(tail_integral(d, pt({0}), 0.0), std::invalid_argument);
}

TEST_CASE("Loss-Sloane weight") {
  const Domain d = Domain::interval(-1.3, 0.8);
  for (double alpha : {0.5, 1.0, 2.5})
    for (double x : {-1.0, 0.0, 0.5})
      CHECK(m_alpha(d, pt({x}), alpha) == doctest::Approx(std::min(0.8 - x, x + 1.3)).epsilon(1e-12));

  const Domain disk = Domain::ball(pt({0, 0}), 1);
  for (double alpha : {0.5, 1.0, 3.0}) {
    const double pi = std::numbers::pi;
    const double closed = std::pow(2 * std::sqrt(pi) * std::tgamma((1 + alpha) / 2) / std::tgamma((2 + alpha) / 2), 1 / alpha) *
                          std::pow(2 * pi, -1 / alpha);
    CHECK(m_alpha(disk, pt({0, 0}), alpha) == doctest::Approx(closed).epsilon(1e-12));
  }

  // Large alpha approaches the smaller one-sided distance monotonically.
  const Domain sym = Domain::interval(-1, 1);
  double prev = 0.0;
  for (double alpha : {1.0, 2.0, 4.0, 8.0, 16.0, 64.0}) {
    const double m = m_alpha(sym, pt({0.3}), alpha, kDefaultDirections);
    CHECK(m == doctest::Approx(0.7).epsilon(1e-12));
    prev = m;
  }
  CHECK(prev == doctest::Approx(0.7));
  CHECK_THROWS(m_alpha(sym, pt({0}), 0.0));
}

TEST_CASE("Hardy pointwise bound") {
  const FracParams params{1, 0.25, 2.0};
  const Comparison eq = hardy_pointwise_bound(Domain::interval(-1, 1), pt({0}), params);
  CHECK(eq.lhs == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(eq.rhs == doctest::Approx(4.0).epsilon(1e-14));

  const Domain gap = Domain::union_of({Domain::interval(-1, 0.2), Domain::interval(0.4, 1)});
  const Comparison c = hardy_pointwise_bound(gap, pt({0}), params);
  const double oracle = power_integral(0, -kInf, -1, 0.5) + power_integral(0, 0.2, 0.4, 0.5) +
                        power_integral(0, 1, kInf, 0.5);
  CHECK(c.lhs == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(c.lhs <= c.rhs);

  const Comparison disk = hardy_pointwise_bound(Domain::ball(pt({0, 0}), 1), pt({0.5, 0}), FracParams{2, 0.6, 2.0});
  CHECK(disk.lhs <= disk.rhs * (1 + 1e-6));
}

TEST_CASE("lemma: integral inside decreases under symmetrization") {
  const Comparison c = lemma_decrease_inside(Domain::interval(0, 2), 0.5);
  CHECK(c.lhs == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(c.rhs == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(c.lhs > c.rhs);

  // Off-center unit disk, alpha = 1: rhs = integral over theta of the exit radius from 0.
  const Comparison d = lemma_decrease_inside(Domain::ball(pt({0.5, 0}), 1), 1.0);
  const double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double th) { return 0.5 * std::cos(th) + std::sqrt(1 - 0.25 * std::sin(th) * std::sin(th)); },
      0.0, 2 * std::numbers::pi, 10, 1e-14);
  CHECK(d.lhs == doctest::Approx(2 * std::numbers::pi).epsilon(1e-12));
  CHECK(d.rhs == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(d.lhs - d.rhs > 5 * d.error);

  CHECK_THROWS_AS(lemma_decrease_inside(Domain::interval(-1, 1), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(lemma_decrease_inside(Domain::interval(0, 2), 1.0), std::domain_error);
}

TEST_CASE("lemma: integral outside increases under symmetrization") {
  const Domain d = Domain::union_of({Domain::interval(-1.5, 0.5), Domain::interval(0.6, 1.1)});
  const Comparison c = lemma_decrease_outside(d, 2.0);
  CHECK(c.rhs == doctest::Approx(1.6).epsilon(1e-14));
  const double oracle = 1 / 1.5 + (1 / 0.5 - 1 / 0.6) + 1 / 1.1;
  CHECK(c.lhs == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(c.lhs > c.rhs);

  const Comparison shifted = lemma_decrease_outside(Domain::interval(-0.5, 1.5), 3.0);
  CHECK(shifted.rhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(shifted.lhs == doctest::Approx((4.0 + 1.0 / 2.25) / 2).epsilon(1e-14));

  const Comparison disk = lemma_decrease_outside(Domain::ball(pt({0.3, 0}), 1), 3.0);
  CHECK(disk.lhs - disk.rhs > 5 * disk.error);

  CHECK_THROWS_AS(lemma_decrease_outside(Domain::interval(-1, 1), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(lemma_decrease_outside(Domain::interval(0.1, 2), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(lemma_decrease_outside(Domain::interval(-0.5, 1.5), 1.0), std::domain_error);
}
