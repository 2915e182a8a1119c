#include "gagliardo/kernel.hpp"

#include "gagliardo/directions.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gagliardo {

namespace {

// integral over the part of the ray {r > 0} outside d of r^{-1-s} dr, and the first exit.
struct RayTail {
  double integral = 0.0;
  double first_exit = 0.0;
};

RayTail ray_tail(const Domain& d, const Point& x, const Point& w, double s) {
  const auto chords = line_chords(d, x, w);
  RayTail out;
  double pos = 0.0;  // start of the next gap
  bool started = false;
  for (const Chord& c : chords) {
    if (c.hi <= 0.0) continue;
    if (!started) {
      if (c.lo > 0.0) throw std::invalid_argument("tail_kernel: point is outside the domain");
      started = true;
      pos = c.hi;
      out.first_exit = c.hi;
      continue;
    }
    out.integral += (std::pow(pos, -s) - std::pow(c.lo, -s)) / s;
    pos = c.hi;
  }
  if (!started) throw std::invalid_argument("tail_kernel: point is outside the domain");
  out.integral += std::pow(pos, -s) / s;
  return out;
}

// integral over the ray {r > 0} inside d of r^{m-1} dr (m > 0), or outside d (m < 0).
double ray_power(const Domain& d, const Point& w, double m, bool inside) {
  const Point origin = Point::Zero(d.dimension());
  double acc = 0.0;
  double pos = 0.0;
  for (const Chord& c : line_chords(d, origin, w)) {
    if (c.hi <= 0.0) continue;
    const double a = std::max(0.0, c.lo);
    if (inside) {
      acc += (std::pow(c.hi, m) - std::pow(a, m)) / m;
    } else {
      if (a > pos) {
        if (pos <= 0.0) throw std::invalid_argument("lemma_decrease_outside: origin not interior");
        acc += (std::pow(a, m) - std::pow(pos, m)) / m;
      }
      pos = c.hi;
    }
  }
  if (!inside) {
    if (pos <= 0.0) throw std::invalid_argument("lemma_decrease_outside: origin not interior");
    acc += -std::pow(pos, m) / m;
  }
  return acc;
}

double sphere_sum(const Domain& d, int directions, const std::function<double(const Point&)>& f) {
  const DirectionRule rule = direction_rule(d.dimension(), directions);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < rule.size(); ++k) acc += rule.weights[k] * f(rule.directions.col(k));
  return acc;
}

void require_interior(const Domain& d, const Point& x, const char* who) {
  if (x.size() != d.dimension())
    throw std::invalid_argument(std::string(who) + ": point dimension mismatch");
  if (!contains(d, x)) throw std::invalid_argument(std::string(who) + ": point is outside the domain");
}

}  // namespace

double tail_integral(const Domain& d, const Point& x, double s, int directions) {
  require_interior(d, x, "tail_kernel");
  if (!(s > 0.0)) throw std::invalid_argument("tail_kernel: exponent s must be positive");
  const DirectionRule rule = direction_rule(d.dimension(), directions);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < rule.size(); ++k) {
    const RayTail t = ray_tail(d, x, rule.directions.col(k), s);
    if (t.first_exit < kBoundaryExclusion)
      throw std::domain_error("tail_kernel: point lies within 1e-9 of the boundary");
    acc += rule.weights[k] * t.integral;
  }
  return acc;
}

double tail_kernel(const Domain& d, const Point& x, const FracParams& params, int directions) {
  params.validate();
  return tail_integral(d, x, params.s(), directions);
}

double m_alpha(const Domain& d, const Point& x, double alpha, int directions, int big_n) {
  require_interior(d, x, "m_alpha");
  if (!(alpha > 0.0)) throw std::invalid_argument("m_alpha: alpha must be positive");
  const int n = d.dimension();
  const int N = big_n > 0 ? big_n : n;
  const double pi = std::numbers::pi;
  const double prefactor = 2.0 * std::pow(pi, (n - 1) / 2.0) * gamma((1.0 + alpha) / 2.0) /
                           gamma((N + alpha) / 2.0);
  const double integral = sphere_sum(d, directions, [&](const Point& w) {
    const double e = exit_distance(d, x, w);
    if (e < kBoundaryExclusion)
      throw std::domain_error("m_alpha: point lies within 1e-9 of the boundary");
    return std::pow(e, -alpha);
  });
  return std::pow(prefactor, 1.0 / alpha) * std::pow(integral, -1.0 / alpha);
}

Comparison hardy_pointwise_bound(const Domain& d, const Point& x, const FracParams& params,
                                 int directions) {
  params.validate();
  require_interior(d, x, "hardy_pointwise_bound");
  const double s = params.s();
  Comparison c;
  c.lhs = tail_integral(d, x, s, directions);
  c.rhs = sphere_sum(d, directions, [&](const Point& w) {
            return std::pow(exit_distance(d, x, w), -s);
          }) /
          s;
  return c;
}

Comparison lemma_decrease_inside(const Domain& d, double alpha, int directions) {
  const int n = d.dimension();
  if (!(alpha > 0.0) || !(alpha < static_cast<double>(n)))
    throw std::domain_error("lemma_decrease_inside: need 0 < alpha < n");
  if (!(sym_diff_measure(d) > 0.0))
    throw std::invalid_argument("lemma_decrease_inside: domain coincides with its symmetrization");
  const double m = n - alpha;
  const double R = symmetrize(d).radius;
  Comparison c;
  c.lhs = sphere_measure(n) * std::pow(R, m) / m;
  auto integrate = [&](int dirs) {
    return sphere_sum(d, dirs, [&](const Point& w) { return ray_power(d, w, m, true); });
  };
  c.rhs = integrate(directions);
  if (n > 1) c.error = std::abs(c.rhs - integrate(directions / 2));
  return c;
}

Comparison lemma_decrease_outside(const Domain& d, double alpha, int directions) {
  const int n = d.dimension();
  if (!(alpha > static_cast<double>(n)))
    throw std::domain_error("lemma_decrease_outside: need alpha > n");
  const Point origin = Point::Zero(n);
  if (!contains(d, origin))
    throw std::invalid_argument("lemma_decrease_outside: the origin must be an interior point");
  if (!(sym_diff_measure(d) > 0.0))
    throw std::invalid_argument("lemma_decrease_outside: domain coincides with its symmetrization");
  const double m = n - alpha;
  const double R = symmetrize(d).radius;
  Comparison c;
  c.rhs = sphere_measure(n) * std::pow(R, m) / (alpha - n);
  auto integrate = [&](int dirs) {
    return sphere_sum(d, dirs, [&](const Point& w) { return ray_power(d, w, m, false); });
  };
  c.lhs = integrate(directions);
  if (n > 1) c.error = std::abs(c.lhs - integrate(directions / 2));
  return c;
}

}  // namespace gagliardo
