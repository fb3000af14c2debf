#pragma once

// Closed-form radial eigenfunctions g(r) = r^n (1+r^2)^{-s} P(-r^2) with a
// terminating hypergeometric polynomial P, plus ODE-residual and weighted-L2
// verification of them.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "sphosc/special_functions.hpp"
#include "sphosc/spectrum.hpp"

namespace sphosc {

struct RadialEigenfunction {
  ModelParams params;
  ModeIndex mode;
  double lambda = 0;
  double decay_exponent = 0;         // s in (1+r^2)^{-s}
  std::vector<double> poly_coeffs;   // P(z), z = -r^2, degree m, poly_coeffs[0] = 1
};

// 2n + 4m + d - 2 < 2 sqrt((d-1)^2 + 4w^2 + 4 lambda): weighted square
// integrability of g.
inline bool integrability_holds(const ModelParams& p, ModeIndex mode, double lambda) {
  const double root = std::sqrt((p.d - 1.0) * (p.d - 1.0) + 4.0 * p.omega * p.omega + 4.0 * lambda);
  return 2.0 * mode.n + 4.0 * mode.m + p.d - 2.0 < 2.0 * root;
}

inline RadialEigenfunction build_eigenfunction(const ModelParams& p, ModeIndex mode) {
  validate_mode(p, mode);
  if (p.d == 1)
    throw std::invalid_argument("build_eigenfunction: d = 1 radial profiles are not supported");
  const double lambda = eigenvalue(p, mode);
  const double root_lam =
      std::sqrt((p.d - 1.0) * (p.d - 1.0) + 4.0 * p.omega * p.omega + 4.0 * lambda);
  const double root_ang =
      std::sqrt((2.0 * mode.n + p.d - 2) * (2.0 * mode.n + p.d - 2) + 16.0 * p.omega * p.omega);

  HypergeometricParams hp;
  hp.a = -0.5 * root_lam + 0.5 * mode.n + 0.25 * p.d - 0.25 * root_ang;
  hp.b = -static_cast<double>(mode.m);  // the terminating branch; analytically a + root_ang/2
  hp.c = mode.n + 0.5 * p.d;
  hp.termination_order = mode.m;

  RadialEigenfunction f;
  f.params = p;
  f.mode = mode;
  f.lambda = lambda;
  f.decay_exponent = 0.5 * (root_lam - (p.d - 1));
  f.poly_coeffs = hyp2f1_coefficients(hp);
  return f;
}

struct RadialValues {
  double g = 0;
  double dg = 0;
  double d2g = 0;
};

// Analytic g, g', g'' via the product rule on r^n (1+r^2)^{-s} P(-r^2).
inline RadialValues evaluate_with_derivatives(const RadialEigenfunction& f, double r) {
  const int n = f.mode.n;
  const double s = f.decay_exponent;
  const double u = 1.0 + r * r;
  const double z = -r * r;

  double P = 0, dP = 0, d2P = 0;  // P and derivatives in z
  for (auto it = f.poly_coeffs.rbegin(); it != f.poly_coeffs.rend(); ++it) {
    d2P = d2P * z + 2.0 * dP;
    dP = dP * z + P;
    P = P * z + *it;
  }

  const double A = std::pow(r, n);
  const double dA = n > 0 ? n * std::pow(r, n - 1) : 0.0;
  const double d2A = n > 1 ? n * (n - 1.0) * std::pow(r, n - 2) : 0.0;
  const double B = std::pow(u, -s);
  const double dB = -2.0 * s * r * std::pow(u, -s - 1);
  const double d2B = -2.0 * s * std::pow(u, -s - 1) + 4.0 * s * (s + 1.0) * r * r * std::pow(u, -s - 2);
  const double C = P;
  const double dC = -2.0 * r * dP;
  const double d2C = -2.0 * dP + 4.0 * r * r * d2P;

  RadialValues v;
  v.g = A * B * C;
  v.dg = dA * B * C + A * dB * C + A * B * dC;
  v.d2g = d2A * B * C + A * d2B * C + A * B * d2C +
          2.0 * (dA * dB * C + dA * B * dC + A * dB * dC);
  return v;
}

inline double evaluate(const RadialEigenfunction& f, double r) {
  return evaluate_with_derivatives(f, r).g;
}

// Radial eigenvalue equation residual
//   r^2 g'' + (1 + (d-2)(1-r^2)/(1+r^2)) r g'
//     + (-n(n+d-2) + 4(1+r^2)^{-2}(-w^2 r^4 + lambda r^2)) g = 0
// normalized by 1 + |lambda g|, maximized over the grid.
inline double ode_residual(const RadialEigenfunction& f, std::span<const double> r_grid) {
  if (r_grid.empty()) throw std::invalid_argument("ode_residual: empty grid");
  const int d = f.params.d;
  const int n = f.mode.n;
  const double w = f.params.omega;
  double worst = 0.0;
  for (double r : r_grid) {
    if (!(r > 0) || !std::isfinite(r)) throw std::invalid_argument("ode_residual: grid must lie in (0, inf)");
    const auto v = evaluate_with_derivatives(f, r);
    const double u = 1.0 + r * r;
    const double drift = 1.0 + (d - 2) * (1.0 - r * r) / u;
    const double pot = -static_cast<double>(n) * (n + d - 2) +
                       4.0 / (u * u) * (-w * w * r * r * r * r + f.lambda * r * r);
    const double lhs = r * r * v.d2g + drift * r * v.dg + pot * v.g;
    worst = std::max(worst, std::abs(lhs) / (1.0 + std::abs(f.lambda * v.g)));
  }
  return worst;
}

namespace detail {

// integral over (0, inf) of h(r) dr, split at r = 1 with u = 1/r on the tail
template <class F>
double integrate_halfline(F&& h, double rel_tol = 1e-11) {
  using boost::math::quadrature::gauss_kronrod;
  const auto inner = gauss_kronrod<double, 15>::integrate(h, 0.0, 1.0, 15, rel_tol);
  const auto outer = gauss_kronrod<double, 15>::integrate(
      [&](double u) { return h(1.0 / u) / (u * u); }, 0.0, 1.0, 15, rel_tol);
  return inner + outer;
}

inline double weight(const ModelParams& p, double r) {
  return std::pow(r, p.d - 1) * std::pow(1.0 + r * r, -p.d);
}

}  // namespace detail

// Weighted inner product int g1 g2 (1+r^2)^{-d} r^{d-1} dr of two radial
// profiles sharing ModelParams.
inline double radial_inner_product(const RadialEigenfunction& f1, const RadialEigenfunction& f2) {
  return detail::integrate_halfline([&](double r) {
    return evaluate(f1, r) * evaluate(f2, r) * detail::weight(f1.params, r);
  });
}

inline double l2_norm(const RadialEigenfunction& f) {
  if (!integrability_holds(f.params, f.mode, f.lambda))
    throw std::domain_error("l2_norm: integrability condition violated");
  return std::sqrt(radial_inner_product(f, f));
}

// Rayleigh quotient of the radial quadratic form; reproduces the eigenvalue
// for exact eigenfunctions.
inline double rayleigh_quotient(const RadialEigenfunction& f) {
  const int d = f.params.d;
  const int n = f.mode.n;
  const double w = f.params.omega;
  const double num = detail::integrate_halfline([&](double r) {
    const auto v = evaluate_with_derivatives(f, r);
    const double u = 1.0 + r * r;
    const double kinetic = 0.25 * u * u * (v.dg * v.dg + n * (n + d - 2.0) * v.g * v.g / (r * r));
    return (kinetic + w * w * r * r * v.g * v.g) * detail::weight(f.params, r);
  });
  return num / detail::integrate_halfline([&](double r) {
    const double g = evaluate(f, r);
    return g * g * detail::weight(f.params, r);
  });
}

}  // namespace sphosc
