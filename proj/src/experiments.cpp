#include "gagliardo/experiments.hpp"

#include "embedding.hpp"
#include "gagliardo/lattice.hpp"
#include "gagliardo/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gagliardo {

GridFunction build_bump(const BumpSpec& spec, const Grid& grid) {
  if (!(spec.epsilon > 0.0)) throw std::invalid_argument("build_bump: epsilon must be positive");
  if (spec.center.size() != grid.dimension())
    throw std::invalid_argument("build_bump: center dimension mismatch");
  const double cells = 2.0 * spec.epsilon / grid.h;
  if (cells < kBumpResolution * (1.0 - 1e-9))
    throw std::invalid_argument("build_bump: eps = " + std::to_string(spec.epsilon) +
                                " is under-resolved; need h <= " +
                                std::to_string(2.0 * spec.epsilon / kBumpResolution) +
                                " (16 cells across the diameter), got h = " +
                                std::to_string(grid.h));
  Eigen::ArrayXd values(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    values[i] = eta((grid.midpoint(i) - spec.center).norm() / spec.epsilon);
  GridFunction u(grid, std::move(values));
  u.validate();
  return u;
}

Grid domain_grid(const Domain& d, double h) {
  const auto box = bounding_box(d);
  return lattice_covering(box.first, box.second, h, box.first, 2);
}

std::string to_string(Placement p) {
  switch (p) {
    case Placement::Boundary: return "boundary";
    case Placement::Center: return "center";
    case Placement::Origin: return "origin";
    case Placement::Auto: return "auto";
    case Placement::Explicit: return "explicit";
  }
  return "unknown";
}

Placement placement_from_string(const std::string& name) {
  if (name == "boundary") return Placement::Boundary;
  if (name == "center") return Placement::Center;
  if (name == "origin") return Placement::Origin;
  if (name == "auto") return Placement::Auto;
  if (name == "explicit") return Placement::Explicit;
  throw std::invalid_argument("unknown placement '" + name +
                              "' (expected boundary, center, origin, auto or explicit)");
}

namespace {

Point auto_placement(const Domain& d, double eps, const FracParams& params, double h) {
  const int n = d.dimension();
  const Grid g = domain_grid(d, h);
  const int limit = n == 1 ? 512 : 64;
  Eigen::VectorXi stride(n);
  Eigen::VectorXi nodes(n);
  for (int a = 0; a < n; ++a) {
    stride[a] = std::max(1, (g.cells[a] + limit - 1) / limit);
    nodes[a] = g.cells[a] / stride[a] + 1;
  }
  const Grid node_grid{g.lo, h, nodes};
  std::vector<double> score = parallel_map(static_cast<std::size_t>(node_grid.size()), [&](std::size_t k) {
    const Eigen::VectorXi c = node_grid.coords(static_cast<Eigen::Index>(k));
    const Point x = g.lo + h * (c.array() * stride.array()).matrix().cast<double>();
    if (!contains(d, x) || distance_to_boundary(d, x) < 2.0 * eps) return -1.0;
    return tail_kernel(d, x, params);
  });
  const auto best = std::max_element(score.begin(), score.end());
  if (best == score.end() || *best < 0.0)
    throw std::invalid_argument("auto placement: no lattice point at distance >= 2 eps from the boundary");
  const Eigen::VectorXi c = node_grid.coords(static_cast<Eigen::Index>(best - score.begin()));
  return g.lo + h * (c.array() * stride.array()).matrix().cast<double>();
}

}  // namespace

Point place_bump(const Domain& d, Placement placement, double eps, const FracParams& params,
                 double h, const std::optional<Point>& point) {
  const int n = d.dimension();
  switch (placement) {
    case Placement::Explicit:
      if (!point) throw std::invalid_argument("explicit placement needs a point");
      if (point->size() != n) throw std::invalid_argument("explicit placement: dimension mismatch");
      return *point;
    case Placement::Origin:
      return Point::Zero(n);
    case Placement::Center: {
      Point x = Point::Zero(n);
      x[0] = 0.5 * symmetrize(d).radius;
      return x;
    }
    case Placement::Auto:
      return auto_placement(d, eps, params, h);
    case Placement::Boundary: {
      if (n == 1) return Point::Constant(1, bounding_box(d).second[0] - eps);
      if (d.parts().size() == 1) {
        if (const auto* b = std::get_if<Ball>(&d.parts().front())) {
          Point x = b->center;
          x[0] += b->radius - eps;
          return x;
        }
        if (const auto* b = std::get_if<Box>(&d.parts().front())) {
          Point x = 0.5 * (b->lo + b->hi);
          x[0] = b->hi[0] - eps;
          return x;
        }
      }
      throw std::invalid_argument(
          "boundary placement is defined for 1-D domains, single balls and boxes; use auto or explicit");
    }
  }
  throw std::invalid_argument("place_bump: bad placement");
}

bool SweepReport::any_flagged() const {
  return std::any_of(records.begin(), records.end(), [](const SweepRecord& r) { return r.flagged; });
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope: need at least two points");
  const auto m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("loglog_slope: nonpositive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

SweepReport counterexample_sweep(const Domain& d, const FracParams& params,
                                 std::vector<double> epsilons, Placement placement,
                                 const std::optional<Point>& point, double h) {
  params.validate();
  if (params.n != d.dimension()) throw std::invalid_argument("counterexample_sweep: params.n != domain dimension");
  if (epsilons.empty()) throw std::invalid_argument("counterexample_sweep: no epsilon values");
  std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
  epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());
  if (!(epsilons.back() > 0.0)) throw std::invalid_argument("counterexample_sweep: epsilon must be positive");
  if (h <= 0.0) h = epsilons.back() / kBumpResolution;

  SweepReport report;
  report.params = params;
  report.placement = to_string(placement);
  report.threshold = kVerdictThreshold;
  const Grid grid = domain_grid(d, h);
  const Domain target = symmetrize(d).as_domain();

  for (double eps : epsilons) {
    SweepRecord rec;
    rec.epsilon = eps;
    rec.h = h;
    rec.center = place_bump(d, placement, eps, params, h, point);
    if (!contains(d, rec.center) || distance_to_boundary(d, rec.center) < eps * (1.0 - 1e-9))
      throw std::invalid_argument("counterexample_sweep: the bump of radius " + std::to_string(eps) +
                                  " escapes the domain at the chosen placement");
    const GridFunction u = build_bump({rec.center, eps}, grid);
    const GridFunction u2 = coarsen(u);
    const GridFunction us = sample_on_target(rearrange(u), target, h);
    const GridFunction us2 = coarsen(us);

    const double L = lattice_energy(u, d, params);
    const double L2 = lattice_energy(u2, d, params, true);
    const double R = lattice_energy(us, target, params);
    const double R2 = lattice_energy(us2, target, params, true);
    const double C = cross_term(u, d, params);
    const double C2 = cross_term(u2, d, params, true);
    const double Cs = cross_term(us, target, params);
    const double Cs2 = cross_term(us2, target, params, true);

    auto result = [&](double fine, double coarse, double spacing) {
      EnergyResult r;
      r.value = fine;
      r.error_estimate = std::abs(fine - coarse);
      r.h = spacing;
      r.params = params;
      return r;
    };
    rec.lhs = result(L, L2, h);
    rec.rhs = result(R, R2, us.h());
    rec.cross_domain = C;
    rec.cross_domain_error = std::abs(C - C2);
    rec.cross_star = Cs;
    rec.cross_star_error = std::abs(Cs - Cs2);
    rec.gap = R - L;
    rec.gap_error = std::abs((R - L) - (R2 - L2));
    rec.flagged = rec.gap > report.threshold * rec.gap_error;
    rec.full_domain = result(L + 2.0 * C, L2 + 2.0 * C2, h);
    rec.full_star = result(R + 2.0 * Cs, R2 + 2.0 * Cs2, us.h());
    report.records.push_back(std::move(rec));
  }

  if (report.records.size() >= 3) {
    std::vector<double> e, cd, cs;
    for (const auto& r : report.records) {
      e.push_back(r.epsilon);
      cd.push_back(r.cross_domain);
      cs.push_back(r.cross_star);
    }
    try {
      report.slope_domain = loglog_slope(e, cd);
      report.slope_star = loglog_slope(e, cs);
      report.slopes_fitted = true;
    } catch (const std::invalid_argument&) {
      report.warnings.push_back("slope fit skipped: a cross term is not positive");
    }
  } else {
    report.warnings.push_back("slope fit skipped: fewer than 3 epsilon values");
  }

  bool seen = false;
  for (const auto& r : report.records) {
    if (r.flagged) seen = true;
    if (seen && !r.flagged) report.downward_closed = false;
  }
  if (!report.downward_closed)
    report.warnings.push_back("flagged set is not downward-closed in epsilon");
  return report;
}

TailPair finequality_check(const Domain& d, const FracParams& params) {
  params.validate();
  const Point origin = Point::Zero(d.dimension());
  if (!contains(d, origin))
    throw std::invalid_argument("finequality_check: the origin must be an interior point");
  if (!(sym_diff_measure(d) > 0.0))
    throw std::invalid_argument("finequality_check: domain coincides with its symmetrization");
  return {tail_kernel(d, origin, params), tail_kernel(symmetrize(d).as_domain(), origin, params)};
}

RatioSuite theorem2_ratio_suite(const std::vector<RatioCase>& cases, const FracParams& params) {
  params.validate();
  if (!(params.s() > 1.0))
    throw std::domain_error("theorem2_ratio_suite: requires sigma p > 1 (got " +
                            std::to_string(params.s()) + ")");
  RatioSuite suite;
  for (const RatioCase& c : cases) {
    const double num = energy_fullspace(rearrange(c.u), params, c.u.h()).value;
    const double den = energy_domain(c.u, c.domain, params).value;
    suite.labels.push_back(c.label);
    suite.numerators.push_back(num);
    suite.denominators.push_back(den);
    suite.ratios.push_back(num / den);
    suite.max_ratio = std::max(suite.max_ratio, num / den);
  }
  return suite;
}

std::vector<RatioCase> theorem2_corpus(std::uint64_t seed, double h, int count) {
  std::mt19937_64 rng(seed);
  const Domain d = Domain::interval(-1.0, 1.0);
  const Grid grid = domain_grid(d, h);
  std::vector<RatioCase> out;
  for (int k = 0; k < count; ++k) {
    const int bumps = k % 2 == 0 ? 1 : 2;
    Eigen::ArrayXd values = Eigen::ArrayXd::Zero(grid.size());
    std::string label = bumps == 1 ? "bump" : "two-bump";
    for (int b = 0; b < bumps; ++b) {
      const double eps = bumps == 1 ? 0.15 + 0.25 * uniform01(rng) : 0.1 + 0.2 * uniform01(rng);
      const double center = -1.0 + eps + (2.0 - 2.0 * eps) * uniform01(rng);
      const double amplitude = 0.5 + uniform01(rng);
      values += amplitude * build_bump({Point::Constant(1, center), eps}, grid).values();
    }
    out.push_back({label + "-" + std::to_string(k), GridFunction(grid, values), d});
  }
  return out;
}

NormEnergy sobolev_from_hardy_check(const GridFunction& u, const Domain& d,
                                    const FracParams& params) {
  params.validate();
  if (params.p != 2.0 || !(params.sigma > 0.5) || params.n < 2)
    throw std::invalid_argument("sobolev_from_hardy_check: requires p = 2, sigma in (1/2, 1), n >= 2");
  if ((u.values() == 0.0).all()) return {0.0, 0.0};
  const double norm = lp_norm(u, sobolev_exponent(params));
  return {norm * norm, energy_domain(u, d, params).value};
}

GridFunction initial_bump(const Domain& d, double h) {
  const auto box = bounding_box(d);
  const Point c = 0.5 * (box.first + box.second);
  if (!contains(d, c)) throw std::invalid_argument("initial_bump: bounding-box center is outside the domain");
  return build_bump({c, 0.9 * distance_to_boundary(d, c)}, domain_grid(d, h));
}

DescentResult best_constant_descent(const Domain& d, const FracParams& params, int iterations,
                                    double step, const GridFunction& initial) {
  params.validate();
  if (params.p != 2.0 || !(params.sigma > 0.5) || params.n != 2)
    throw std::invalid_argument("best_constant_descent: requires p = 2, sigma in (1/2, 1), n = 2");
  if (iterations < 0 || !(step > 0.0))
    throw std::invalid_argument("best_constant_descent: need iterations >= 0 and step > 0");
  initial.validate();
  const detail::Embedding e = detail::embed(initial, d, false);
  const Grid& g = e.grid;
  const double h = g.h;
  const int n = params.n;
  const double s = params.s();
  const double q = sobolev_exponent(params);
  const double cell = g.cell_volume();

  // Unknowns: region cells lying inside the closure of d.
  std::vector<Eigen::Index> vars;
  std::vector<Eigen::Index> slot(static_cast<std::size_t>(g.size()), -1);
  for (Eigen::Index i : e.region)
    if (detail::cell_inside(d, g, i)) {
      slot[static_cast<std::size_t>(i)] = static_cast<Eigen::Index>(vars.size());
      vars.push_back(i);
    }
  const auto m = static_cast<Eigen::Index>(vars.size());
  if (m == 0) throw std::invalid_argument("best_constant_descent: no interior cells");

  // E(u) = u^T A u reproduces lattice_energy for p = 2.
  const detail::KernelTable kt = detail::kernel_table(g, s);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  const double pair_scale = 2.0 * std::pow(h, n - s);
  for (Eigen::Index a = 0; a < m; ++a) {
    const Eigen::VectorXi ca = g.coords(vars[static_cast<std::size_t>(a)]);
    double diag = 0.0;
    for (Eigen::Index j : e.region) diag += kt(ca, g.coords(j));
    A(a, a) += pair_scale * diag;
    for (Eigen::Index b = 0; b < m; ++b)
      if (b != a) A(a, b) -= pair_scale * kt(ca, g.coords(vars[static_cast<std::size_t>(b)]));
  }
  const double z = LatticeCorrection(n, 2.0, s).leading(Eigen::VectorXd::Unit(n, 0));
  const double corr_scale = z * std::pow(h, n + 2.0 - s);
  for (Eigen::Index i : e.region) {
    if (!detail::stencil_in_region(e, i)) continue;
    const Eigen::VectorXi c = g.coords(i);
    for (int axis = 0; axis < n; ++axis) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(m);
      const double w[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
      bool any = false;
      for (int k = -2; k <= 2; ++k) {
        Eigen::VectorXi cq = c;
        cq[axis] += k;
        const Eigen::Index v = slot[static_cast<std::size_t>(g.flat(cq))];
        if (v >= 0 && w[k + 2] != 0.0) {
          row[v] += w[k + 2] / (12.0 * h);
          any = true;
        }
      }
      if (any) A.noalias() -= corr_scale * row * row.transpose();
    }
  }

  auto qnorm = [&](const Eigen::VectorXd& u) {
    return std::pow(u.array().abs().pow(q).sum() * cell, 1.0 / q);
  };
  auto quotient = [&](const Eigen::VectorXd& u) {
    const double nu = qnorm(u);
    return u.dot(A * u) / (nu * nu);
  };

  Eigen::VectorXd u(m);
  for (Eigen::Index a = 0; a < m; ++a) u[a] = e.values[vars[static_cast<std::size_t>(a)]];
  if (!(u.maxCoeff() > 0.0)) throw std::invalid_argument("best_constant_descent: zero initial function");
  u /= qnorm(u);

  DescentResult out;
  double Q = quotient(u);
  out.trace.push_back(Q);
  double t = step;
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd Au = A * u;
    const double N = qnorm(u);
    const double E = u.dot(Au);
    const Eigen::VectorXd dN = (std::pow(N, 1.0 - q) * cell) * u.array().pow(q - 1.0).matrix();
    const Eigen::VectorXd grad = 2.0 * Au / (N * N) - 2.0 * E / (N * N * N) * dN;
    const double gmax = grad.cwiseAbs().maxCoeff();
    if (!(gmax > 0.0)) break;
    const Eigen::VectorXd dir = grad / gmax * u.maxCoeff();
    bool accepted = false;
    for (int halving = 0; halving <= 10; ++halving) {
      Eigen::VectorXd v = (u - t * dir).cwiseMax(0.0);
      if (v.maxCoeff() > 0.0) {
        v /= qnorm(v);
        const double Qv = quotient(v);
        if (Qv <= Q) {
          u = v;
          Q = Qv;
          accepted = true;
          break;
        }
      }
      if (halving == 10) break;
      t *= 0.5;
      ++out.halvings;
    }
    if (!accepted) {
      if (it == 0)
        throw std::runtime_error("best_constant_descent: no decrease after 10 step halvings");
      out.stalled = true;
      break;
    }
    out.trace.push_back(Q);
    t = std::min(step, 2.0 * t);
  }

  Eigen::ArrayXd values = Eigen::ArrayXd::Zero(g.size());
  for (Eigen::Index a = 0; a < m; ++a) values[vars[static_cast<std::size_t>(a)]] = u[a];
  out.final_u = GridFunction(g, std::move(values));
  return out;
}

}  // namespace gagliardo
