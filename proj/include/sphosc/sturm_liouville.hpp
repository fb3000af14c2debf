#pragma once

// Independent eigensolver for the radial problem, by second-order flux-form
// discretization of the Sturm-Liouville form
//
//   -(p g')' + q g = lambda w g,   p = w = sin^{d-1}(phi),
//   q = [n(n+d-2)/sin^2(phi) + omega^2 tan^2(phi/2)] sin^{d-1}(phi)
//
// on phi in (0, pi) with r = tan(phi/2). For d >= 2 the coefficient p
// vanishes at both endpoints, so the correct endpoint behavior (regular at
// phi=0, decay at phi=pi for omega>0, Neumann for omega=0) is implicit in the
// vanishing flux and the diverging potential. For d = 1 the circle splits by
// parity into even/odd half-problems on (0, pi). Eigenvalues come from
// Sturm-sequence bisection, refined by Richardson extrapolation between the
// N and 2N grids.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sphosc/spectrum.hpp"

namespace sphosc {

enum class Parity { even, odd };  // d = 1 only; ignored for d >= 2

struct DiscretizationConfig {
  ModelParams params;
  int angular_degree = 0;  // n
  int grid_size = 1000;    // N >= 100
  Parity parity = Parity::even;

  void validate() const {
    params.validate();
    if (angular_degree < 0) throw std::invalid_argument("DiscretizationConfig: n must be >= 0");
    if (params.d == 1 && angular_degree != 0)
      throw std::invalid_argument("DiscretizationConfig: d = 1 requires n = 0");
    if (grid_size < 100) throw std::invalid_argument("DiscretizationConfig: grid_size must be >= 100");
  }
};

// Symmetric tridiagonal eigenproblem B y = lambda y obtained from the
// generalized problem by the diagonal weight similarity.
struct TridiagonalProblem {
  std::vector<double> diag;
  std::vector<double> off;
  int dropped_nodes = 0;  // nodes excluded next to phi = pi on potential overflow
};

inline TridiagonalProblem assemble_radial_problem(const DiscretizationConfig& cfg) {
  cfg.validate();
  const int d = cfg.params.d;
  const int n = cfg.angular_degree;
  const double w = cfg.params.omega;
  int N = cfg.grid_size;
  const double h = M_PI / N;

  TridiagonalProblem prob;

  if (d == 1) {
    // -g'' + w^2 tan^2(phi/2) g on the half-circle, cell-centered nodes
    prob.diag.resize(N);
    prob.off.assign(N - 1, -1.0 / (h * h));
    for (int i = 0; i < N; ++i) {
      const double phi = (i + 0.5) * h;
      const double pot = w * w * std::tan(0.5 * phi) * std::tan(0.5 * phi);
      prob.diag[i] = 2.0 / (h * h) + pot;
    }
    // phi = 0 face: Neumann for even parity, Dirichlet for odd
    prob.diag[0] += (cfg.parity == Parity::even ? -1.0 : 1.0) / (h * h);
    // phi = pi face: Dirichlet for omega > 0 (decaying modes); for omega = 0
    // the parity about pi matches the parity about 0 (circle functions)
    const bool dirichlet_at_pi = w > 0 || cfg.parity == Parity::odd;
    prob.diag[N - 1] += (dirichlet_at_pi ? 1.0 : -1.0) / (h * h);
    return prob;
  }

  // d >= 2: flux form with p evaluated on faces, weight similarity applied
  std::vector<double> wgt(N), q(N);
  for (int i = 0; i < N; ++i) {
    const double phi = (i + 0.5) * h;
    const double s = std::sin(phi);
    wgt[i] = std::pow(s, d - 1);
    const double tan2 = std::tan(0.5 * phi) * std::tan(0.5 * phi);
    q[i] = (n * (n + d - 2.0) / (s * s) + w * w * tan2) * wgt[i];
    if (!std::isfinite(q[i] / wgt[i])) {
      // node too close to the potential singularity at pi; drop it
      N = i;
      prob.dropped_nodes = cfg.grid_size - N;
      wgt.resize(N);
      q.resize(N);
      break;
    }
  }
  if (N < 100) throw std::invalid_argument("assemble_radial_problem: potential overflow left too few nodes");

  prob.diag.resize(N);
  prob.off.resize(N - 1);
  std::vector<double> p_face(N + 1);
  for (int i = 0; i <= N; ++i) p_face[i] = std::pow(std::sin(i * h), d - 1);
  for (int i = 0; i < N; ++i)
    prob.diag[i] = (p_face[i] + p_face[i + 1]) / (h * h * wgt[i]) + q[i] / wgt[i];
  for (int i = 0; i + 1 < N; ++i)
    prob.off[i] = -p_face[i + 1] / (h * h * std::sqrt(wgt[i] * wgt[i + 1]));
  return prob;
}

namespace detail {

// number of eigenvalues of the symmetric tridiagonal matrix strictly below x
inline int sturm_count(const TridiagonalProblem& prob, double x) {
  int count = 0;
  double dprev = 1.0;
  for (std::size_t i = 0; i < prob.diag.size(); ++i) {
    const double offsq = i == 0 ? 0.0 : prob.off[i - 1] * prob.off[i - 1];
    double dcur = prob.diag[i] - x - offsq / dprev;
    if (dcur == 0.0) dcur = -1e-300;
    if (dcur < 0) ++count;
    dprev = dcur;
  }
  return count;
}

inline std::vector<double> smallest_eigenvalues(const TridiagonalProblem& prob, int count) {
  // Gershgorin bounds
  double lo = prob.diag[0], hi = prob.diag[0];
  for (std::size_t i = 0; i < prob.diag.size(); ++i) {
    double radius = 0;
    if (i > 0) radius += std::abs(prob.off[i - 1]);
    if (i + 1 < prob.diag.size()) radius += std::abs(prob.off[i]);
    lo = std::min(lo, prob.diag[i] - radius);
    hi = std::max(hi, prob.diag[i] + radius);
  }
  std::vector<double> out(count);
  for (int j = 0; j < count; ++j) {
    double a = lo, b = hi;
    while (b - a > 1e-13 * std::max(1.0, std::abs(a) + std::abs(b))) {
      const double mid = 0.5 * (a + b);
      if (sturm_count(prob, mid) > j)
        b = mid;
      else
        a = mid;
    }
    out[j] = 0.5 * (a + b);
  }
  return out;
}

}  // namespace detail

struct OracleSpectrum {
  std::vector<double> eigenvalues;          // ascending, Richardson-extrapolated
  int n = 0;                                // angular degree
  std::vector<double> estimated_error;      // extrapolation differences
};

inline OracleSpectrum lowest_eigenvalues(const DiscretizationConfig& cfg, int count) {
  cfg.validate();
  if (count < 1 || count > cfg.grid_size / 10)
    throw std::invalid_argument("lowest_eigenvalues: count must be in [1, N/10]");

  struct Pair {
    double value;
    double error;
  };
  auto solve_refined = [&](Parity parity, int k) {
    DiscretizationConfig coarse = cfg;
    coarse.parity = parity;
    DiscretizationConfig fine = coarse;
    fine.grid_size = 2 * cfg.grid_size;
    const auto ev1 = detail::smallest_eigenvalues(assemble_radial_problem(coarse), k);
    const auto ev2 = detail::smallest_eigenvalues(assemble_radial_problem(fine), k);
    std::vector<Pair> out(k);
    for (int i = 0; i < k; ++i)
      out[i] = {(4.0 * ev2[i] - ev1[i]) / 3.0, std::abs(ev2[i] - ev1[i]) / 3.0};
    return out;
  };

  std::vector<Pair> merged;
  if (cfg.params.d == 1) {
    auto even = solve_refined(Parity::even, count);
    auto odd = solve_refined(Parity::odd, count);
    merged.insert(merged.end(), even.begin(), even.end());
    merged.insert(merged.end(), odd.begin(), odd.end());
    std::sort(merged.begin(), merged.end(),
              [](const Pair& a, const Pair& b) { return a.value < b.value; });
    merged.resize(count);
  } else {
    merged = solve_refined(cfg.parity, count);
  }

  OracleSpectrum out;
  out.n = cfg.angular_degree;
  for (const auto& pr : merged) {
    out.eigenvalues.push_back(pr.value);
    out.estimated_error.push_back(pr.error);
  }
  return out;
}

}  // namespace sphosc
