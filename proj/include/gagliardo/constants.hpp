#pragma once

// Special functions and closed-form constants shared by every other module.
// The functions are templated on a floating-point scalar type; the fixed
// coefficient tables are double precision, so long double buys range rather
// than accuracy.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gagliardo {

/// The triple (n, sigma, p) that fixes the Gagliardo kernel |x-y|^{-(n+sigma p)}.
struct FracParams {
  int n = 1;
  double sigma = 0.5;
  double p = 2.0;

  /// Order of the singularity beyond the dimension, sigma * p.
  double s() const { return sigma * p; }
  double kernel_exponent() const { return n + sigma * p; }

  void validate() const {
    if (n < 1) throw std::invalid_argument("FracParams: dimension n must be >= 1");
    if (!(sigma > 0.0 && sigma < 1.0))
      throw std::invalid_argument("FracParams: sigma must lie in (0,1)");
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::invalid_argument("FracParams: p must be a positive finite number");
  }
};

/// Gamma function for real x > 0 (Lanczos, g = 7, nine terms; reflection below 1/2).
template <typename Scalar>
Scalar gamma(Scalar x) {
  using std::exp;
  using std::floor;
  using std::pow;
  using std::sin;
  using std::sqrt;
  if (!(x > Scalar(0)))
    throw std::domain_error("gamma: argument must be positive");
  constexpr std::array<double, 9> coeff = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const Scalar pi = std::numbers::pi_v<Scalar>;
  // Integers and half-integers up to 30 by the recurrence from Gamma(1) = 1
  // and Gamma(1/2) = sqrt(pi), so that closed forms built on them are exact.
  if (x <= Scalar(30) && Scalar(2) * x == floor(Scalar(2) * x)) {
    const bool half = x != floor(x);
    Scalar acc = half ? sqrt(pi) : Scalar(1);
    for (Scalar k = half ? Scalar(0.5) : Scalar(1); k < x; k += Scalar(1)) acc *= k;
    return acc;
  }
  if (x < Scalar(0.5)) {
    // Gamma(x) Gamma(1-x) = pi / sin(pi x); 1-x lies in (1/2, 1).
    return pi / (sin(pi * x) * gamma(Scalar(1) - x));
  }
  const Scalar z = x - Scalar(1);
  Scalar acc = coeff[0];
  for (std::size_t i = 1; i < coeff.size(); ++i) acc += coeff[i] / (z + Scalar(i));
  const Scalar t = z + Scalar(7.5);
  return sqrt(Scalar(2) * pi) * pow(t, z + Scalar(0.5)) * exp(-t) * acc;
}

/// Hurwitz zeta function zeta(s, a) for real s != 1 and a > 0, including the
/// analytic continuation to s < 1. Euler-Maclaurin summation with a fixed
/// head length; accurate to roughly 1e-14 relative for s in [0, 30]. For s < 0
/// the head sum cancels and digits are lost in proportion to 32^{1-s}.
template <typename Scalar>
Scalar hurwitz_zeta(Scalar s, Scalar a) {
  using std::abs;
  using std::pow;
  if (!(a > Scalar(0))) throw std::domain_error("hurwitz_zeta: a must be positive");
  if (abs(s - Scalar(1)) < Scalar(1e-14)) throw std::domain_error("hurwitz_zeta: pole at s = 1");
  // B_{2j} / (2j)!
  constexpr std::array<double, 14> bernoulli_over_factorial = {
      1.0 / 12.0,
      -1.0 / 720.0,
      1.0 / 30240.0,
      -1.0 / 1209600.0,
      1.0 / 47900160.0,
      -691.0 / 1307674368000.0,
      1.0 / 74724249600.0,
      -3617.0 / 10670622842880000.0,
      43867.0 / 5109094217170944000.0,
      -174611.0 / 802857662698291200000.0,
      77683.0 / 14101100039391805440000.0,
      -236364091.0 / 1693824136731743669452800000.0,
      657931.0 / 186134520519971831808000000.0,
      -3392780147.0 / 37893265687455865519472640000000.0};
  constexpr int head = 32;
  Scalar sum = 0;
  for (int k = 0; k < head; ++k) sum += pow(Scalar(k) + a, -s);
  const Scalar big = Scalar(head) + a;
  sum += pow(big, Scalar(1) - s) / (s - Scalar(1));
  sum += Scalar(0.5) * pow(big, -s);
  Scalar rising = s;  // (s)_{2j-1}
  Scalar power = pow(big, -s - Scalar(1));
  for (std::size_t j = 0; j < bernoulli_over_factorial.size(); ++j) {
    sum += Scalar(bernoulli_over_factorial[j]) * rising * power;
    const Scalar m = Scalar(2 * j + 1);
    rising *= (s + m) * (s + m + Scalar(1));
    power /= big * big;
  }
  return sum;
}

/// Riemann zeta; s < 0 goes through the functional equation, where the direct
/// summation would cancel catastrophically.
template <typename Scalar>
Scalar riemann_zeta(Scalar s) {
  using std::pow;
  using std::sin;
  if (s < Scalar(0)) {
    const Scalar pi = std::numbers::pi_v<Scalar>;
    return pow(Scalar(2), s) * pow(pi, s - Scalar(1)) * sin(pi * s / Scalar(2)) *
           gamma(Scalar(1) - s) * hurwitz_zeta(Scalar(1) - s, Scalar(1));
  }
  return hurwitz_zeta(s, Scalar(1));
}

/// Dirichlet beta function, analytically continued: 4^{-s} (zeta(s,1/4) - zeta(s,3/4)).
/// Negative s by beta(s) = (2/pi)^{1-s} cos(pi s / 2) Gamma(1-s) beta(1-s).
template <typename Scalar>
Scalar dirichlet_beta(Scalar s) {
  using std::abs;
  using std::cos;
  using std::pow;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  if (s < Scalar(0))
    return pow(Scalar(2) / pi, Scalar(1) - s) * cos(pi * s / Scalar(2)) * gamma(Scalar(1) - s) *
           dirichlet_beta(Scalar(1) - s);
  if (abs(s - Scalar(1)) < Scalar(1e-14)) return pi / Scalar(4);
  return pow(Scalar(4), -s) * (hurwitz_zeta(s, Scalar(0.25)) - hurwitz_zeta(s, Scalar(0.75)));
}

/// Volume of the unit ball in R^n, pi^{n/2} / Gamma(n/2 + 1).
template <typename Scalar = double>
Scalar alpha_n(int n) {
  using std::pow;
  if (n < 1) throw std::invalid_argument("alpha_n: dimension must be >= 1");
  using std::sqrt;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Scalar power = n % 2 == 0 ? Scalar(1) : sqrt(pi);
  for (int k = 0; k < n / 2; ++k) power *= pi;
  return power / gamma(Scalar(n) / Scalar(2) + Scalar(1));
}

/// Surface measure of S^{n-1} (counting measure on {-1,+1} when n = 1).
template <typename Scalar = double>
Scalar sphere_measure(int n) {
  return Scalar(n) * alpha_n<Scalar>(n);
}

/// Which quantity the symbol omega_n in the sharp Sobolev constant denotes.
enum class OmegaConvention {
  SphereSn,       ///< surface measure of S^n in R^{n+1}, (n+1) alpha_{n+1}  (default)
  SphereSnMinus1, ///< surface measure of S^{n-1} in R^n
  UnitBallVolume  ///< alpha_n
};

inline std::string_view to_string(OmegaConvention c) {
  switch (c) {
    case OmegaConvention::SphereSn: return "sphere_Sn";
    case OmegaConvention::SphereSnMinus1: return "sphere_Sn-1";
    case OmegaConvention::UnitBallVolume: return "unit_ball_volume";
  }
  return "unknown";
}

inline OmegaConvention omega_convention_from_string(std::string_view name) {
  if (name == "sphere_Sn") return OmegaConvention::SphereSn;
  if (name == "sphere_Sn-1") return OmegaConvention::SphereSnMinus1;
  if (name == "unit_ball_volume") return OmegaConvention::UnitBallVolume;
  throw std::invalid_argument("unknown omega_n convention '" + std::string(name) +
                              "' (expected sphere_Sn, sphere_Sn-1 or unit_ball_volume)");
}

template <typename Scalar = double>
Scalar omega_n(int n, OmegaConvention convention = OmegaConvention::SphereSn) {
  switch (convention) {
    case OmegaConvention::SphereSn: return sphere_measure<Scalar>(n + 1);
    case OmegaConvention::SphereSnMinus1: return sphere_measure<Scalar>(n);
    case OmegaConvention::UnitBallVolume: return alpha_n<Scalar>(n);
  }
  throw std::invalid_argument("omega_n: bad convention");
}

/// S(n, sigma, R^n) = 2^{1-2s} w^{2s/n} pi^{n/2} Gamma(2-s) / (s (1-s) Gamma((n-2s)/2)),
/// with s = sigma and w = omega_n under the chosen convention.
template <typename Scalar = double>
Scalar sharp_sobolev_constant(int n, Scalar sigma,
                              OmegaConvention convention = OmegaConvention::SphereSn) {
  using std::pow;
  if (n < 1) throw std::invalid_argument("sharp_sobolev_constant: dimension must be >= 1");
  if (!(sigma > Scalar(0) && sigma < Scalar(1)))
    throw std::invalid_argument("sharp_sobolev_constant: sigma must lie in (0,1)");
  if (!(Scalar(n) > Scalar(2) * sigma))
    throw std::domain_error("sharp_sobolev_constant: requires n > 2 sigma");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar w = omega_n<Scalar>(n, convention);
  const Scalar num = pow(Scalar(2), Scalar(1) - Scalar(2) * sigma) *
                     pow(w, Scalar(2) * sigma / Scalar(n)) * pow(pi, Scalar(n) / Scalar(2)) *
                     gamma(Scalar(2) - sigma);
  const Scalar den =
      sigma * (Scalar(1) - sigma) * gamma((Scalar(n) - Scalar(2) * sigma) / Scalar(2));
  return num / den;
}

}  // namespace gagliardo
