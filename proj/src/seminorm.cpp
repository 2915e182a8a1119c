#include "gagliardo/seminorm.hpp"

#include "embedding.hpp"
#include "gagliardo/kernel.hpp"
#include "gagliardo/lattice.hpp"
#include "gagliardo/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gagliardo {

namespace detail {

bool cell_inside(const Domain& d, const Grid& g, Eigen::Index flat) {
  const Point mid = g.midpoint(flat);
  if (!contains(d, mid)) return false;
  // Corners pulled slightly inward: the cell must lie in the closure of d.
  const int n = g.dimension();
  const double half = 0.5 * g.h * (1.0 - 2e-9);
  for (int mask = 0; mask < (1 << n); ++mask) {
    Point c = mid;
    for (int a = 0; a < n; ++a) c[a] += (mask >> a & 1) ? half : -half;
    if (!contains(d, c)) return false;
  }
  return true;
}

Embedding embed(const GridFunction& u, const Domain& d, bool clip) {
  const Grid& ug = u.grid();
  const int n = ug.dimension();
  if (d.dimension() != n) throw std::invalid_argument("energy: domain and function dimensions differ");
  const auto box = bounding_box(d);
  const Eigen::VectorXd lo = box.first.cwiseMin(ug.lo);
  const Eigen::VectorXd hi = box.second.cwiseMax(ug.hi());
  Embedding e;
  e.grid = lattice_covering(lo, hi, ug.h, ug.lo, 2);
  e.values = Eigen::ArrayXd::Zero(e.grid.size());
  Eigen::VectorXi offset(n);
  for (int a = 0; a < n; ++a)
    offset[a] = static_cast<int>(std::lround((ug.lo[a] - e.grid.lo[a]) / ug.h));
  e.in_region.assign(static_cast<std::size_t>(e.grid.size()), 0);
  for (Eigen::Index i = 0; i < e.grid.size(); ++i)
    if (contains(d, e.grid.midpoint(i))) {
      e.in_region[static_cast<std::size_t>(i)] = 1;
      e.region.push_back(i);
    }
  for (Eigen::Index i = 0; i < ug.size(); ++i) {
    const double v = u.values()[i];
    if (v == 0.0) continue;
    const Eigen::Index f = e.grid.flat(ug.coords(i) + offset);
    if (!e.in_region[static_cast<std::size_t>(f)] || (!clip && !cell_inside(d, e.grid, f))) {
      if (clip) continue;
      throw std::invalid_argument("energy: support of u escapes the domain at cell " +
                                  std::to_string(i));
    }
    e.values[f] = v;
  }
  for (Eigen::Index i : e.region)
    if (e.values[i] > 0.0) e.support.push_back(i);
  return e;
}

KernelTable kernel_table(const Grid& grid, double s) {
  KernelTable t;
  t.n = grid.dimension();
  t.extent = grid.cells;
  t.values.resize(static_cast<std::size_t>(grid.size()));
  const double e = -(t.n + s) / 2.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXi c = grid.coords(i);
    const double r2 = c.cast<double>().squaredNorm();
    t.values[static_cast<std::size_t>(i)] = r2 == 0.0 ? 0.0 : std::pow(r2, e);
  }
  return t;
}

Eigen::VectorXd gradient(const Grid& grid, const Eigen::ArrayXd& values, Eigen::Index flat) {
  const int n = grid.dimension();
  const Eigen::VectorXi c = grid.coords(flat);
  Eigen::VectorXd g(n);
  for (int a = 0; a < n; ++a) {
    auto at = [&](int k) {
      Eigen::VectorXi q = c;
      q[a] += k;
      if (q[a] < 0 || q[a] >= grid.cells[a]) return 0.0;
      return values[grid.flat(q)];
    };
    g[a] = (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / (12.0 * grid.h);
  }
  return g;
}

// True when the five-point stencil of every axis stays inside the region.
bool stencil_in_region(const Embedding& e, Eigen::Index flat) {
  const Eigen::VectorXi c = e.grid.coords(flat);
  for (int a = 0; a < e.grid.dimension(); ++a)
    for (int k = -2; k <= 2; ++k) {
      Eigen::VectorXi q = c;
      q[a] += k;
      if (q[a] < 0 || q[a] >= e.grid.cells[a]) return false;
      if (!e.in_region[static_cast<std::size_t>(e.grid.flat(q))]) return false;
    }
  return true;
}

}  // namespace detail

namespace {

using detail::Embedding;

void check_params(const GridFunction& u, const FracParams& params) {
  params.validate();
  if (params.n != u.dimension())
    throw std::invalid_argument("energy: params.n = " + std::to_string(params.n) +
                                " but the function has dimension " + std::to_string(u.dimension()));
  if (params.n > 2) throw std::invalid_argument("energy: only dimensions 1 and 2 are supported");
}

double power(double x, double p) { return p == 2.0 ? x * x : std::pow(x, p); }

double local_correction(const Embedding& e, const FracParams& params) {
  const int n = params.n;
  const double p = params.p;
  const double s = params.s();
  const double h = e.grid.h;
  const LatticeCorrection lc(n, p, s);
  const double scale = std::pow(h, n + p - s);
  double total = 0.0;
  for (Eigen::Index i : e.region) {
    if (!detail::stencil_in_region(e, i)) continue;
    const Eigen::VectorXd g = detail::gradient(e.grid, e.values, i);
    double term = 0.0;
    const double gn = g.norm();
    if (gn > 0.0) term = lc.leading(g) * power(gn, p);
    if (n == 1 && p >= 2.0) {
      const Eigen::VectorXi c = e.grid.coords(i);
      auto at = [&](int k) {
        const int q = c[0] + k;
        return (q < 0 || q >= e.grid.cells[0]) ? 0.0 : e.values[q];
      };
      const double u2 =
          (-at(-2) + 16.0 * at(-1) - 30.0 * at(0) + 16.0 * at(1) - at(2)) / (12.0 * h * h);
      const double u3 = (at(2) - 2.0 * at(1) + 2.0 * at(-1) - at(-2)) / (2.0 * h * h * h);
      const double a = u2 / 2.0;
      const double b = u3 / 6.0;
      const double weight = p == 2.0 ? 1.0 : std::pow(std::abs(g[0]), p - 2.0);
      term += lc.second_order() * weight * (p * (p - 1.0) / 2.0 * a * a + p * g[0] * b) * h * h;
    }
    total += term;
  }
  return total * scale;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double cross_sum(const GridFunction& u, const Domain& d, const FracParams& params, bool clip) {
  std::vector<Eigen::Index> cells;
  for (Eigen::Index i = 0; i < u.values().size(); ++i)
    if (u.values()[i] > 0.0) cells.push_back(i);
  const auto terms = parallel_map(cells.size(), [&](std::size_t k) {
    const Eigen::Index i = cells[k];
    const Point x = u.grid().midpoint(i);
    if (!contains(d, x)) {
      if (clip) return 0.0;
      throw std::invalid_argument("cross_term: support of u escapes the domain at cell " +
                                  std::to_string(i));
    }
    double f = 0.0;
    try {
      f = tail_kernel(d, x, params);
    } catch (const std::domain_error&) {
      if (!clip) throw;
      return 0.0;
    }
    return power(u.values()[i], params.p) * f;
  });
  return pairwise_sum(terms) * u.grid().cell_volume();
}

}  // namespace

nlohmann::json to_json(const EnergyResult& r) {
  return nlohmann::json{{"value", r.value},
                        {"error_estimate", r.error_estimate},
                        {"h", r.h},
                        {"params", {{"n", r.params.n}, {"sigma", r.params.sigma}, {"p", r.params.p}}},
                        {"timing_seconds", r.seconds}};
}

double lattice_energy(const GridFunction& u, const Domain& d, const FracParams& params, bool clip) {
  check_params(u, params);
  const Embedding e = detail::embed(u, d, clip);
  if (e.support.empty()) return 0.0;
  const detail::KernelTable kt = detail::kernel_table(e.grid, params.s());
  std::vector<Eigen::VectorXi> coords(e.region.size());
  for (std::size_t k = 0; k < e.region.size(); ++k) coords[k] = e.grid.coords(e.region[k]);
  std::vector<double> region_values(e.region.size());
  for (std::size_t k = 0; k < e.region.size(); ++k) region_values[k] = e.values[e.region[k]];
  const double p = params.p;
  const auto partial = parallel_map(e.support.size(), [&](std::size_t k) {
    const Eigen::Index i = e.support[k];
    const Eigen::VectorXi ci = e.grid.coords(i);
    const double ui = e.values[i];
    double acc = 0.0;
    for (std::size_t j = 0; j < e.region.size(); ++j) {
      const double uj = region_values[j];
      const double w = kt(ci, coords[j]);
      if (w == 0.0) continue;
      // Pairs with a zero cell are visited from one side only.
      acc += (uj == 0.0 ? 2.0 : 1.0) * power(std::abs(ui - uj), p) * w;
    }
    return acc;
  });
  const double h = e.grid.h;
  const double sum = pairwise_sum(partial) * std::pow(h, params.n - params.s());
  return std::max(0.0, sum - local_correction(e, params));
}

EnergyResult energy_domain(const GridFunction& u, const Domain& d, const FracParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  u.validate();
  check_params(u, params);
  EnergyResult r;
  r.params = params;
  r.h = u.h();
  r.value = lattice_energy(u, d, params, false);
  const double coarse = lattice_energy(coarsen(u), d, params, true);
  r.error_estimate = std::abs(r.value - coarse);
  r.seconds = elapsed(t0);
  return r;
}

double cross_term(const GridFunction& u, const Domain& d, const FracParams& params, bool clip) {
  check_params(u, params);
  return cross_sum(u, d, params, clip);
}

EnergyResult energy_fullspace(const GridFunction& u, const FracParams& params, const Domain& hull) {
  const auto t0 = std::chrono::steady_clock::now();
  u.validate();
  check_params(u, params);
  const Grid& g = u.grid();
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (u.values()[i] == 0.0) continue;
    const Point mid = g.midpoint(i);
    for (int mask = 0; mask < (1 << g.dimension()); ++mask) {
      Point c = mid;
      // Corners pulled in by 1e-9 h: cells may end on the hull boundary.
      for (int a = 0; a < g.dimension(); ++a) c[a] += ((mask >> a & 1) ? 0.5 : -0.5) * (1 - 1e-9) * g.h;
      if (!contains(hull, c))
        throw std::invalid_argument("energy_fullspace: support of u leaves the hull at cell " +
                                    std::to_string(i));
    }
  }
  EnergyResult r;
  r.params = params;
  r.h = u.h();
  r.value = lattice_energy(u, hull, params, false) + 2.0 * cross_sum(u, hull, params, false);
  const GridFunction c = coarsen(u);
  const double coarse =
      lattice_energy(c, hull, params, true) + 2.0 * cross_sum(c, hull, params, true);
  r.error_estimate = std::abs(r.value - coarse);
  r.seconds = elapsed(t0);
  return r;
}

GridFunction sample_on_target(const RadialProfile& profile, const Domain& target, double h) {
  if (!is_centered_ball(target))
    throw std::invalid_argument("sample_on_target: target must be a centered ball or interval");
  const double R = symmetrize(target).radius;
  if (profile.support_radius() > R * (1.0 + 1e-12))
    throw std::invalid_argument("energy_rearranged: rearranged support (radius " +
                                std::to_string(profile.support_radius()) +
                                ") exceeds the target radius " + std::to_string(R));
  const Grid grid = centered_grid(profile.dimension(), R, h);
  GridFunction sampled = sample_profile(profile, grid);
  Eigen::ArrayXd values = sampled.values();
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    if (values[i] != 0.0 && grid.midpoint(i).norm() >= R) values[i] = 0.0;
  return GridFunction(grid, std::move(values));
}

EnergyResult energy_rearranged(const GridFunction& u, const Domain& target,
                               const FracParams& params) {
  check_params(u, params);
  const GridFunction sampled = sample_on_target(rearrange(u), target, u.h());
  return energy_domain(sampled, target, params);
}

EnergyResult energy_fullspace(const RadialProfile& profile, const FracParams& params, double h) {
  const int n = profile.dimension();
  // The interpolated profile reaches zero at the outer node of shell K+1; the
  // hull grows by whole cells until that node sits two cells inside it.
  const double support = profile.support_radius();
  const double tail = profile.breakpoint(profile.shells() + 1) - support;
  const double extra = std::max(0.0, std::ceil(tail / h - 2.0 - 1e-9));
  const double R = support + (4.0 + extra) * h;
  const Domain hull = n == 1 ? Domain::interval(-R, R) : Domain::ball(Point::Zero(n), R);
  const GridFunction sampled = sample_on_target(profile, hull, h);
  return energy_fullspace(sampled, params, hull);
}

double sobolev_exponent(const FracParams& params) {
  const double gap = params.n - 2.0 * params.sigma;
  if (!(gap > 0.0)) throw std::domain_error("sobolev exponent requires n > 2 sigma");
  return 2.0 * params.n / gap;
}

double rayleigh_quotient(const GridFunction& u, const Domain& d, const FracParams& params) {
  check_params(u, params);
  if (params.p != 2.0) throw std::invalid_argument("rayleigh_quotient: requires p = 2");
  const double norm = lp_norm(u, sobolev_exponent(params));
  if (!(norm > 0.0)) throw std::invalid_argument("rayleigh_quotient: zero function");
  return lattice_energy(u, d, params, false) / (norm * norm);
}

}  // namespace gagliardo
