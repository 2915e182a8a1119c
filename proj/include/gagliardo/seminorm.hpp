#pragma once

// Gagliardo energies
//
//   E_A(u) = integral over A x A of |u(x) - u(y)|^p / |x - y|^{n + sigma p}
//
// for piecewise-constant grid functions. The double integral is evaluated as
// a punctured lattice sum over cell pairs plus a local correction built from
// the regularized lattice constants (see lattice.hpp) and fourth-order
// finite-difference derivatives; for smooth u the result converges like h^4.
// Every energy carries |E_h - E_2h| as its error estimate, E_2h being the
// same rule applied to the two-to-one coarsening of u.

#include "gagliardo/constants.hpp"
#include "gagliardo/geometry.hpp"
#include "gagliardo/grid.hpp"
#include "gagliardo/rearrange.hpp"

#include "json.hpp"

namespace gagliardo {

struct EnergyResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double h = 0.0;
  FracParams params;
  double seconds = 0.0;
};

nlohmann::json to_json(const EnergyResult& r);

/// Single-resolution lattice energy over d. With `clip`, cells of u whose
/// midpoint lies outside d are dropped instead of rejected.
double lattice_energy(const GridFunction& u, const Domain& d, const FracParams& params,
                      bool clip = false);

/// E_d(u). The support of u must lie in the closure of d.
EnergyResult energy_domain(const GridFunction& u, const Domain& d, const FracParams& params);

/// integral over d of u(x)^p F_d(x) dx by cell midpoints.
double cross_term(const GridFunction& u, const Domain& d, const FracParams& params,
                  bool clip = false);

/// E_{R^n}(u) = E_hull(u) + 2 cross_term(u, hull); every nonzero cell of u lies in the
/// closure of hull.
EnergyResult energy_fullspace(const GridFunction& u, const FracParams& params, const Domain& hull);

/// Whole-space energy of a rearranged function, sampled with spacing h on a
/// centered lattice and measured against a centered hull four cells wider
/// than its support (more when the interpolated tail needs the room).
EnergyResult energy_fullspace(const RadialProfile& profile, const FracParams& params, double h);

/// u* sampled onto the centered lattice of `target` (a ball or interval
/// centered at the origin), with cells outside the target cleared.
GridFunction sample_on_target(const RadialProfile& profile, const Domain& target, double h);

/// E_{target}(u*) for a centered ball `target`.
EnergyResult energy_rearranged(const GridFunction& u, const Domain& target,
                               const FracParams& params);

/// E_d(u) / ||u||_{2n/(n-2 sigma)}^2, p = 2.
double rayleigh_quotient(const GridFunction& u, const Domain& d, const FracParams& params);

/// Exponent 2n / (n - 2 sigma) of the Sobolev norm.
double sobolev_exponent(const FracParams& params);

}  // namespace gagliardo
