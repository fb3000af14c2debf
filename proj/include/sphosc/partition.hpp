#pragma once

// Certified evaluation of the heat-semigroup trace tr exp(-t L_shifted),
// the d=1 Poisson-summation dual form, Mulholland's exact asymptotic
// coefficients, and small-t asymptotic diagnostics.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "sphosc/special_functions.hpp"
#include "sphosc/spectrum.hpp"

namespace sphosc {

class budget_exceeded : public std::runtime_error {
 public:
  explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

struct TruncatedSum {
  double value = 0;
  double tail_bound = 0;  // certified bound on the omitted mass
  std::int64_t terms_used = 0;
  double t = 0;
};

inline constexpr std::int64_t kPartitionTermCap = 10'000'000;

namespace detail {

// sum_{j>=0} exp(-t ((base + j*step)^2 - shift))
//   <= exp(-t (base^2 - shift)) / (1 - exp(-2 t step base)),
// from (base + j*step)^2 >= base^2 + 2 j step base.
inline double gaussian_tail_majorant(double t, double base, double step, double shift = 0) {
  const double ratio = std::exp(-2.0 * t * step * base);
  if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
  return std::exp(-t * (base * base - shift)) / (1.0 - ratio);
}

struct BlockResult {
  double value = 0;
  double tail = 0;
  std::int64_t terms = 0;
};

// sum over m >= 0 of exp(-t ((m + c)^2 - shift)) with a certified tail <= eps.
inline BlockResult gaussian_block(double t, double c, double shift, double eps,
                                  std::int64_t term_cap) {
  BlockResult r;
  for (std::int64_t m = 0;; ++m) {
    const double base = m + 1.0 + c;
    r.value += std::exp(-t * ((m + c) * (m + c) - shift));
    ++r.terms;
    const double tail = gaussian_tail_majorant(t, base, 1.0, shift);
    if (tail <= eps) {
      r.tail = tail;
      return r;
    }
    if (r.terms >= term_cap)
      throw budget_exceeded("partition_function: term cap reached inside an m-block");
  }
}

}  // namespace detail

// tr exp(-t (L_w - E0)) with a certified truncation bound tail_bound <= abs_tol.
inline TruncatedSum partition_function(const ModelParams& p, double t, double abs_tol) {
  p.validate();
  if (!(t > 0)) throw std::invalid_argument("partition_function: t must be > 0");
  if (!(abs_tol > 0)) throw std::invalid_argument("partition_function: abs_tol must be > 0");

  TruncatedSum out;
  out.t = t;

  if (p.d == 1) {
    if (p.omega == 0) {
      // two-sided theta sum over the circle modes
      double s = 1.0;
      std::int64_t terms = 1;
      for (std::int64_t m = 1;; ++m) {
        s += 2.0 * std::exp(-t * m * m);
        ++terms;
        const double tail = 2.0 * detail::gaussian_tail_majorant(t, m + 1.0, 1.0);
        if (tail <= abs_tol) {
          out.value = s;
          out.tail_bound = tail;
          out.terms_used = terms;
          return out;
        }
        if (terms >= kPartitionTermCap)
          throw budget_exceeded("partition_function: term cap reached (d=1, omega=0)");
      }
    }
    // half-integer ladder (m/2 + eta)^2 - eta^2
    const double eta = (1.0 + std::sqrt(1.0 + 16.0 * p.omega * p.omega)) / 4.0;
    double s = 0.0;
    std::int64_t terms = 0;
    for (std::int64_t m = 0;; ++m) {
      const double base = 0.5 * m + eta;
      s += std::exp(-t * (base * base - eta * eta));
      ++terms;
      const double tail =
          detail::gaussian_tail_majorant(t, 0.5 * (m + 1) + eta, 0.5, eta * eta);
      if (tail <= abs_tol) {
        out.value = s;
        out.tail_bound = tail;
        out.terms_used = terms;
        return out;
      }
      if (terms >= kPartitionTermCap)
        throw budget_exceeded("partition_function: term cap reached (d=1)");
    }
  }

  // d >= 2: double sum in n-major order. lambda_shifted = (m + c_n)^2 - C.
  const double half = 0.5 * (p.d - 1);
  const double C = p.omega * p.omega + half * half + ground_state(p).energy;
  auto mult = [&](int n) { return static_cast<double>(multiplicity(p, {0, n})); };

  double value = 0;
  double mtails = 0;
  std::int64_t terms = 0;
  for (int n = 0;; ++n) {
    const double cn = radial_offset(p, n);
    const double eps_n = abs_tol * std::pow(0.5, n + 3);
    const auto block =
        detail::gaussian_block(t, cn, C, eps_n / mult(n), kPartitionTermCap - terms);
    value += mult(n) * block.value;
    mtails += mult(n) * block.tail;
    terms += block.terms;
    if (terms >= kPartitionTermCap)
      throw budget_exceeded("partition_function: term cap reached (d>=2)");

    // certified bound on the remaining n-blocks: whole-block majorants decay
    // at least geometrically once the ratio bound drops below 1
    const double cn1 = radial_offset(p, n + 1);
    const double next_block_bound =
        mult(n + 1) * detail::gaussian_tail_majorant(t, cn1, 1.0, C);
    const double rho = (mult(n + 2) / mult(n + 1)) * std::exp(-t * cn1);
    if (rho < 1.0 && next_block_bound / (1.0 - rho) <= 0.5 * abs_tol) {
      out.value = value;
      out.tail_bound = mtails + next_block_bound / (1.0 - rho);
      out.terms_used = terms;
      return out;
    }
  }
}

// Poisson dual of the d=1, omega=0 theta sum:
// sqrt(pi/t) (1 + 2 sum_{n>=1} exp(-pi^2 n^2 / t)).
inline double poisson_dual_d1(double t) {
  if (!(t > 0)) throw std::invalid_argument("poisson_dual_d1: t must be > 0");
  double s = 1.0;
  for (std::int64_t n = 1;; ++n) {
    const double term = 2.0 * std::exp(-M_PI * M_PI * n * n / t);
    if (term < 1e-18 * s) break;
    s += term;
  }
  return std::sqrt(M_PI / t) * s;
}

struct AsymptoticCoeffs {
  std::vector<Rational> exact;   // empty for fitted coefficients
  std::vector<double> values;
  int order = 0;
  double condition_number = 0;   // 0 when not applicable (exact route)

  bool well_conditioned() const { return condition_number <= 1e10; }
};

// Exact Mulholland coefficients of sum (2n+1) exp(-t (n+1/2)^2) ~ 1/t + a_0
// + a_1 t + ..., from the Mellin representation with Dirichlet series
// 2 zeta(2s-1, 1/2): a_j = (-1)^j (2^{2j+1} - 1) 2^{-2j} B_{2j+2} / (j! (2j+2)).
inline AsymptoticCoeffs mulholland_coeffs(int order) {
  if (order < 0 || order > 20)
    throw std::invalid_argument("mulholland_coeffs: order must be in [0, 20]");
  AsymptoticCoeffs out;
  out.order = order;
  BigInt factorial = 1;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) factorial *= j;
    const BigInt two_pow = BigInt(1) << (2 * j + 1);
    Rational a = bernoulli(2 * j + 2) * Rational(two_pow - 1, BigInt(1) << (2 * j)) /
                 Rational(factorial * (2 * j + 2));
    if (j % 2 == 1) a = -a;
    out.exact.push_back(a);
    out.values.push_back(static_cast<double>(a));
  }
  return out;
}

// partition_function(t) * (4 pi t)^{d/2} / vol(S^d) for each grid point; tends
// to 1 as t -> 0 when the leading heat coefficient is the volume term.
inline std::vector<double> heat_trace_leading_check(const ModelParams& p,
                                                    std::span<const double> t_grid,
                                                    double abs_tol = 1e-10) {
  std::vector<double> ratios;
  ratios.reserve(t_grid.size());
  const double vol = sphere_volume(p.d);
  for (double t : t_grid) {
    const double z = partition_function(p, t, abs_tol).value;
    ratios.push_back(z * std::pow(4.0 * M_PI * t, 0.5 * p.d) / vol);
  }
  return ratios;
}

// Geometric default grid {0.4 * 2^{-j}} with order+4 points.
inline std::vector<double> default_fit_grid(int order) {
  std::vector<double> g(order + 4);
  double t = 0.4;
  for (auto& x : g) {
    x = t;
    t *= 0.5;
  }
  return g;
}

// Least-squares fit of the normalized trace to a polynomial in t.
inline AsymptoticCoeffs fit_asymptotic_coeffs(const ModelParams& p, int order,
                                              std::span<const double> t_grid,
                                              double abs_tol = 1e-12) {
  if (order < 0) throw std::invalid_argument("fit_asymptotic_coeffs: order must be >= 0");
  if (static_cast<int>(t_grid.size()) < order + 3)
    throw std::invalid_argument("fit_asymptotic_coeffs: need at least order+3 grid points");

  const auto y = heat_trace_leading_check(p, t_grid, abs_tol);
  Eigen::MatrixXd V(t_grid.size(), order + 1);
  Eigen::VectorXd rhs(t_grid.size());
  for (int i = 0; i < static_cast<int>(t_grid.size()); ++i) {
    double pow_t = 1.0;
    for (int j = 0; j <= order; ++j) {
      V(i, j) = pow_t;
      pow_t *= t_grid[i];
    }
    rhs(i) = y[i];
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd coeffs = svd.solve(rhs);

  AsymptoticCoeffs out;
  out.order = order;
  out.condition_number =
      svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
  out.values.assign(coeffs.data(), coeffs.data() + coeffs.size());
  return out;
}

}  // namespace sphosc
