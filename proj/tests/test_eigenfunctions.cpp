#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "sphosc/eigenfunctions.hpp"

using namespace sphosc;

namespace {

std::vector<double> log_grid(int count = 60, double lo = 1e-3, double hi = 1e3) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i)
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  return g;
}

}  // namespace

TEST_CASE("ground-state profile") {
  SECTION("d = 2, omega = 1 is (1 + r^2)^{-1}") {
    const auto f = build_eigenfunction({2, 1.0}, {0, 0});
    CHECK(f.decay_exponent == Catch::Approx(1.0).epsilon(1e-14));
    REQUIRE(f.poly_coeffs.size() == 1);
    CHECK(f.poly_coeffs[0] == 1.0);
    for (double r : {0.1, 1.0, 7.0})
      CHECK(evaluate(f, r) == Catch::Approx(1.0 / (1.0 + r * r)).epsilon(1e-14));
  }
  SECTION("omega = 0 ground state is constant") {
    const auto f = build_eigenfunction({3, 0.0}, {0, 0});
    CHECK(f.decay_exponent == Catch::Approx(0.0).margin(1e-14));
    CHECK(evaluate(f, 0.3) == Catch::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("derivatives match finite differences") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> rdist(0.2, 3.0);
  for (auto [d, w, m, n] : {std::tuple{2, 1.0, 2, 1}, {3, 0.5, 1, 2}, {4, 2.0, 3, 0}}) {
    const auto f = build_eigenfunction({d, w}, {m, n});
    for (int trial = 0; trial < 5; ++trial) {
      const double r = rdist(rng);
      const double h = 1e-5 * std::max(1.0, r);
      const auto v = evaluate_with_derivatives(f, r);
      const double gp = evaluate(f, r + h), gm = evaluate(f, r - h);
      CHECK(v.dg == Catch::Approx((gp - gm) / (2 * h)).margin(1e-6 * (1 + std::abs(v.dg))));
      CHECK(v.d2g ==
            Catch::Approx((gp - 2 * v.g + gm) / (h * h)).margin(1e-4 * (1 + std::abs(v.d2g))));
    }
  }
}

TEST_CASE("ODE residual vanishes for true eigenfunctions") {
  const auto grid = log_grid();
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> mdist(0, 5), ndist(0, 5);
  for (int d : {2, 3}) {
    for (double w : {0.5, 1.0, 2.0 * std::sqrt(3.0)}) {
      for (int trial = 0; trial < 6; ++trial) {
        const ModeIndex mode{mdist(rng), ndist(rng)};
        const auto f = build_eigenfunction({d, w}, mode);
        CHECK(ode_residual(f, grid) < 1e-10);
      }
    }
  }
}

TEST_CASE("ODE residual detects a perturbed eigenvalue") {
  const auto grid = log_grid();
  auto f = build_eigenfunction({2, 1.0}, {2, 1});
  REQUIRE(ode_residual(f, grid) < 1e-10);
  f.lambda += 1e-6;
  CHECK(ode_residual(f, grid) > 1e-8);
  f.lambda += 1.0;
  CHECK(ode_residual(f, grid) > 1e-3);
}

TEST_CASE("weighted norms") {
  SECTION("d = 2, omega = 1 ground state: int (1+r^2)^{-4} r dr = 1/6") {
    const auto f = build_eigenfunction({2, 1.0}, {0, 0});
    CHECK(l2_norm(f) == Catch::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-12));
  }
  SECTION("d = 2, omega = 0 constant: int (1+r^2)^{-2} r dr = 1/2") {
    const auto f = build_eigenfunction({2, 0.0}, {0, 0});
    CHECK(l2_norm(f) == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
  }
  SECTION("norms are finite and positive across modes") {
    for (int d : {2, 3, 5}) {
      for (double w : {0.5, 2.0}) {
        for (ModeIndex mode : {ModeIndex{0, 0}, {1, 1}, {3, 2}}) {
          const auto f = build_eigenfunction({d, w}, mode);
          if (!integrability_holds(f.params, f.mode, f.lambda)) continue;
          const double nrm = l2_norm(f);
          CHECK(nrm > 0);
          CHECK(std::isfinite(nrm));
        }
      }
    }
  }
}

TEST_CASE("orthogonality of distinct radial modes at fixed n") {
  for (int d : {2, 3}) {
    for (double w : {0.5, 1.0, 2.0}) {
      const ModelParams p{d, w};
      for (int n : {0, 1, 2}) {
        std::vector<RadialEigenfunction> fs;
        for (int m = 0; m <= 3; ++m) {
          auto f = build_eigenfunction(p, {m, n});
          if (integrability_holds(p, f.mode, f.lambda)) fs.push_back(std::move(f));
        }
        for (std::size_t i = 0; i < fs.size(); ++i)
          for (std::size_t j = i + 1; j < fs.size(); ++j) {
            const double ip = radial_inner_product(fs[i], fs[j]);
            const double scale = l2_norm(fs[i]) * l2_norm(fs[j]);
            CHECK(std::abs(ip) / scale < 1e-10);
          }
      }
    }
  }
}

TEST_CASE("Rayleigh quotient reproduces the eigenvalue") {
  for (auto [d, w, m, n] : {std::tuple{2, 1.0, 0, 0}, {2, 1.0, 1, 1}, {3, 0.5, 2, 0},
                            {3, 2.0, 0, 2}, {4, 1.0, 1, 0}}) {
    const auto f = build_eigenfunction({d, w}, {m, n});
    if (!integrability_holds(f.params, f.mode, f.lambda)) continue;
    CHECK(rayleigh_quotient(f) == Catch::Approx(f.lambda).epsilon(1e-9).margin(1e-9));
  }
}

TEST_CASE("integrability condition") {
  SECTION("always holds on the true spectrum") {
    // with lambda = (m + c_n)^2 - w^2 - ((d-1)/2)^2 the condition reduces to
    // -2 < sqrt(...), so exact modes are always normalizable
    for (int d : {2, 3, 6}) {
      for (double w : {0.0, 0.5, 4.0}) {
        const ModelParams p{d, w};
        for (int m : {0, 3, 12})
          for (int n : {0, 2, 9}) CHECK(integrability_holds(p, {m, n}, eigenvalue(p, {m, n})));
      }
    }
  }
  SECTION("rejected decay branch is non-normalizable") {
    // replacing s by the other root (d - 1 - s decay) breaks the condition:
    // the alternative profile grows like r^{2m + n + 2s - ...} at infinity
    auto f = build_eigenfunction({2, 1.0}, {0, 0});
    const double s_other = -(f.decay_exponent) + 1.0;  // s' with s + s' = d - 1
    f.decay_exponent = s_other;
    // (1+r^2)^{-s'} with s' = 0 is constant: the weighted integral of 1 against
    // r (1+r^2)^{-2} converges, but the profile no longer solves the ODE
    CHECK(ode_residual(f, log_grid()) > 1e-3);
  }
  SECTION("fails off the spectrum, and l2_norm refuses") {
    const ModelParams p{2, 0.5};
    const ModeIndex mode{8, 0};
    CHECK_FALSE(integrability_holds(p, mode, 50.0));  // true eigenvalue is 80.5
    auto f = build_eigenfunction(p, mode);
    f.lambda = 50.0;
    CHECK_THROWS_AS(l2_norm(f), std::domain_error);
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(build_eigenfunction({1, 1.0}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_eigenfunction({2, 1.0}, {-1, 0}), std::invalid_argument);
  const auto f = build_eigenfunction({2, 1.0}, {0, 0});
  CHECK_THROWS_AS(ode_residual(f, std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(ode_residual(f, std::vector<double>{-1.0}), std::invalid_argument);
}
