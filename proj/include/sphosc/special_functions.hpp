#pragma once

// Special-function substrate: terminating Gauss hypergeometric polynomials,
// exact Bernoulli numbers, the Dedekind eta q-product, and sphere volumes.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sphosc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parameters of 2F1(a, b; c; z) with a terminating upper parameter: a or b
// equals -M exactly, so the series is a degree-M polynomial in z.
struct HypergeometricParams {
  double a = 0;
  double b = 0;
  double c = 0;
  int termination_order = 0;  // M

  void validate() const {
    const double M = static_cast<double>(termination_order);
    if (termination_order < 0)
      throw std::invalid_argument("HypergeometricParams: termination_order must be >= 0");
    if (a != -M && b != -M)
      throw std::invalid_argument("HypergeometricParams: neither a nor b equals -M (non-terminating)");
    // no zero Pochhammer denominator within the first M terms
    if (c <= 0 && c == std::floor(c) && c > -(M))
      throw std::invalid_argument("HypergeometricParams: c hits a nonpositive integer inside the sum");
  }
};

// Coefficients of the terminating series: coeff[l] = (a)_l (b)_l / ((c)_l l!),
// l = 0..M, so 2F1(a,b;c;z) = sum coeff[l] z^l.
inline std::vector<double> hyp2f1_coefficients(const HypergeometricParams& p) {
  p.validate();
  std::vector<double> coeff(p.termination_order + 1);
  coeff[0] = 1.0;
  for (int l = 0; l < p.termination_order; ++l)
    coeff[l + 1] = coeff[l] * (p.a + l) * (p.b + l) / ((p.c + l) * (l + 1));
  return coeff;
}

inline double hyp2f1_terminating(const HypergeometricParams& p, double z) {
  const auto coeff = hyp2f1_coefficients(p);
  // Horner on the exact polynomial
  double acc = 0.0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * z + *it;
  return acc;
}

namespace detail {

inline BigInt big_binomial(int n, int k) {
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace detail

// Exact Bernoulli number B_k (convention B_1 = -1/2, B_2 = 1/6), even k in [2, 64].
inline Rational bernoulli(int k) {
  if (k < 2 || k > 64 || k % 2 != 0)
    throw std::invalid_argument("bernoulli: k must be even with 2 <= k <= 64");
  // sum_{j=0}^{r} C(r+1, j) B_j = 0, B_0 = 1
  std::vector<Rational> b(k + 1);
  b[0] = 1;
  for (int r = 1; r <= k; ++r) {
    Rational acc = 0;
    for (int j = 0; j < r; ++j) acc += Rational(detail::big_binomial(r + 1, j)) * b[j];
    b[r] = -acc / Rational(r + 1);
  }
  return b[k];
}

// q^{1/24} * prod_{n>=1} (1 - q^n), truncated once the next factor is within
// 1e-17 of 1.
inline double dedekind_eta_from_q(double q) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("dedekind_eta_from_q: need 0 < q < 1");
  double prod = 1.0;
  double qn = q;
  while (qn >= 1e-17) {
    prod *= 1.0 - qn;
    qn *= q;
  }
  return std::pow(q, 1.0 / 24.0) * prod;
}

// Surface volume of the unit d-sphere: 2 pi^{(d+1)/2} / Gamma((d+1)/2).
inline double sphere_volume(int d) {
  if (d < 1) throw std::invalid_argument("sphere_volume: d must be >= 1");
  const double h = 0.5 * (d + 1);
  return 2.0 * std::pow(M_PI, h) / std::tgamma(h);
}

}  // namespace sphosc
