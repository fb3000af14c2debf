#pragma once

// Closed-form spectral data for the spherical harmonic oscillator
//
//   L_w = Delta_{S^d} + w^2 r^2
//
// in stereographic coordinates, and for the shifted operator
// L_w - E0 whose lowest eigenvalue is zero. Modes are labeled by a
// radial index m >= 0 and an angular degree n >= 0 (n = 0 when d = 1).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sphosc {

struct ModelParams {
  int d = 2;         // dimension of the sphere, d >= 1
  double omega = 0;  // oscillator frequency, omega >= 0

  void validate() const {
    if (d < 1) throw std::invalid_argument("ModelParams: d must be >= 1");
    if (!(omega >= 0) || !std::isfinite(omega))
      throw std::invalid_argument("ModelParams: omega must be finite and >= 0");
  }
};

struct ModeIndex {
  int m = 0;  // radial index
  int n = 0;  // angular spherical-harmonic degree

  friend bool operator==(ModeIndex a, ModeIndex b) { return a.m == b.m && a.n == b.n; }
};

inline void validate_mode(const ModelParams& p, ModeIndex mode) {
  p.validate();
  if (mode.m < 0 || mode.n < 0)
    throw std::invalid_argument("ModeIndex: m and n must be nonnegative");
  if (p.d == 1 && mode.n != 0)
    throw std::invalid_argument("ModeIndex: d = 1 admits only n = 0");
}

// Ground state (1+r^2)^{-exponent} with eigenvalue `energy`.
struct GroundState {
  double exponent = 0;
  double energy = 0;
};

inline GroundState ground_state(const ModelParams& p) {
  p.validate();
  if (p.omega == 0) return {0.0, 0.0};  // constant ground state on the round sphere
  const double dm2 = static_cast<double>(p.d - 2);
  const double eta = (std::sqrt(dm2 * dm2 + 16.0 * p.omega * p.omega) - dm2) / 4.0;
  return {eta, p.d * eta / 2.0};
}

// Base of the square in lambda_{m,n} = (m + radial_offset(n))^2 - w^2 - ((d-1)/2)^2,
// valid for d >= 2.
inline double radial_offset(const ModelParams& p, int n) {
  const double b = 2.0 * n + p.d - 2;
  return 0.25 * (std::sqrt(b * b + 16.0 * p.omega * p.omega) + (p.d - 2) + 2.0 * (n + 1));
}

inline double eigenvalue(const ModelParams& p, ModeIndex mode) {
  validate_mode(p, mode);
  const double w = p.omega;
  if (p.d == 1) {
    if (w == 0) return static_cast<double>(mode.m) * mode.m;  // circle Laplacian
    // Half-integer radial ladder on top of the ground exponent eta; the two
    // interlaced families (even/odd about r = 0) step by 1/2. Validated against
    // the Sturm-Liouville discretization.
    const double eta = (1.0 + std::sqrt(1.0 + 16.0 * w * w)) / 4.0;
    const double base = 0.5 * mode.m + eta;
    return base * base - w * w;
  }
  const double half = 0.5 * (p.d - 1);
  const double base = mode.m + radial_offset(p, mode.n);
  return base * base - w * w - half * half;
}

inline double eigenvalue_shifted(const ModelParams& p, ModeIndex mode) {
  if (mode.m == 0 && mode.n == 0) {
    validate_mode(p, mode);
    return 0.0;
  }
  return eigenvalue(p, mode) - ground_state(p).energy;
}

namespace detail {

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

// Dimension of the angular eigenspace: degree-n spherical harmonics on S^{d-1}.
inline std::int64_t multiplicity(const ModelParams& p, ModeIndex mode) {
  validate_mode(p, mode);
  if (p.d == 1) return (p.omega == 0 && mode.m > 0) ? 2 : 1;
  const int n = mode.n;
  if (n == 0) return 1;
  if (p.d == 2) return 2;
  return detail::binomial(n + p.d - 1, p.d - 1) - detail::binomial(n + p.d - 3, p.d - 1);
}

struct EigenvalueRecord {
  ModeIndex mode;
  double lambda = 0;
  double lambda_shifted = 0;
  std::int64_t multiplicity = 1;
};

// All modes with lambda <= lambda_max, sorted by (lambda, m, n). Completeness
// follows from strict monotonicity of lambda_{m,n} in m and in n.
inline std::vector<EigenvalueRecord> enumerate_spectrum(const ModelParams& p, double lambda_max) {
  p.validate();
  if (!std::isfinite(lambda_max))
    throw std::invalid_argument("enumerate_spectrum: lambda_max must be finite");
  const double lambda0 = eigenvalue(p, {0, 0});
  if (lambda_max < lambda0)
    throw std::invalid_argument("enumerate_spectrum: lambda_max below the ground eigenvalue");

  std::vector<EigenvalueRecord> out;
  auto push_column = [&](int n) {
    // ascending in m for fixed n
    bool any = false;
    for (int m = 0;; ++m) {
      const ModeIndex mode{m, n};
      const double lam = eigenvalue(p, mode);
      if (lam > lambda_max) break;
      any = true;
      out.push_back({mode, lam, eigenvalue_shifted(p, mode), multiplicity(p, mode)});
    }
    return any;
  };

  if (p.d == 1) {
    push_column(0);
  } else {
    for (int n = 0; push_column(n); ++n) {
    }
  }
  std::sort(out.begin(), out.end(), [](const EigenvalueRecord& a, const EigenvalueRecord& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.mode.m != b.mode.m) return a.mode.m < b.mode.m;
    return a.mode.n < b.mode.n;
  });
  return out;
}

struct DegeneracyGroup {
  double value = 0;
  std::vector<ModeIndex> members;
  std::int64_t total_multiplicity = 0;
};

// Merge adjacent records whose eigenvalues lie within tol of the group's first
// eigenvalue; multiplicities add on the common value.
inline std::vector<DegeneracyGroup> group_degeneracies(const std::vector<EigenvalueRecord>& records,
                                                       double tol) {
  if (!(tol >= 0)) throw std::invalid_argument("group_degeneracies: tol must be >= 0");
  if (!std::is_sorted(records.begin(), records.end(),
                      [](const EigenvalueRecord& a, const EigenvalueRecord& b) {
                        return a.lambda < b.lambda;
                      }))
    throw std::invalid_argument("group_degeneracies: records must be sorted by lambda");

  std::vector<DegeneracyGroup> groups;
  for (const auto& rec : records) {
    if (groups.empty() || std::abs(rec.lambda - groups.back().value) > tol) {
      groups.push_back({rec.lambda, {}, 0});
    }
    groups.back().members.push_back(rec.mode);
    groups.back().total_multiplicity += rec.multiplicity;
  }
  return groups;
}

// Solve lambda_{mode1}(w) = lambda_{mode2}(w) on [lo, hi] by sign-change
// bracketing plus bisection. Absence of a sign change is a valid result.
inline std::optional<double> find_degenerate_omega(int d, ModeIndex mode1, ModeIndex mode2,
                                                   double lo, double hi) {
  if (mode1 == mode2) throw std::invalid_argument("find_degenerate_omega: modes must differ");
  if (!(0 <= lo && lo < hi) || !std::isfinite(hi))
    throw std::invalid_argument("find_degenerate_omega: need 0 <= lo < hi");
  auto diff = [&](double w) {
    const ModelParams p{d, w};
    return eigenvalue(p, mode1) - eigenvalue(p, mode2);
  };

  constexpr int kScanPoints = 2048;
  double a = lo, fa = diff(a);
  for (int i = 1; i <= kScanPoints; ++i) {
    const double b = lo + (hi - lo) * i / kScanPoints;
    const double fb = diff(b);
    if (fa == 0.0) return a;
    if ((fa < 0) != (fb < 0)) {
      double x0 = a, x1 = b, f0 = fa;
      while (x1 - x0 > 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, x1)) {
        const double mid = 0.5 * (x0 + x1);
        const double fm = diff(mid);
        if (fm == 0.0) return mid;
        if ((f0 < 0) == (fm < 0)) {
          x0 = mid;
          f0 = fm;
        } else {
          x1 = mid;
        }
      }
      const double wstar = 0.5 * (x0 + x1);
      const double scale = std::max(1.0, std::abs(eigenvalue({d, wstar}, mode1)));
      if (std::abs(diff(wstar)) <= 1e-12 * scale) return wstar;
      return std::nullopt;
    }
    a = b;
    fa = fb;
  }
  return std::nullopt;
}

}  // namespace sphosc
