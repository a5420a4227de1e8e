#include "oracles.hpp"

#include "hfs/ball.hpp"

#include <doctest.h>

#include <random>

using namespace hfs::ball;

namespace {

Eigen::VectorXd unit(double theta, double phi) {
  Eigen::VectorXd v(3);
  v << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
  return v;
}

Eigen::VectorXd unit2(double theta) {
  Eigen::VectorXd v(2);
  v << std::cos(theta), std::sin(theta);
  return v;
}

// Normalized surface integral over S^2 by nested adaptive Simpson. Both angles are split into
// uneven pieces so trigonometric integrands cannot alias onto the first Simpson samples.
double pieces(const std::function<double(double)>& f, double a, double b, int m) {
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const double u0 = a + (b - a) * std::pow(double(i) / m, 1.1), u1 = a + (b - a) * std::pow(double(i + 1) / m, 1.1);
    acc += oracle::simpson(f, u0, u1, 1e-12);
  }
  return acc;
}

double sphere_mean(const std::function<double(const Eigen::VectorXd&)>& f) {
  return pieces(
             [&](double th) {
               return std::sin(th) * pieces([&](double ph) { return f(unit(th, ph)); }, 0.0, 2.0 * oracle::pi, 7);
             },
             0.0, oracle::pi, 5) /
         (4.0 * oracle::pi);
}

}  // namespace

TEST_SUITE("ball") {

TEST_CASE("harmonic dimensions") {
  CHECK(harmonic_dim(2, 0) == 1);
  CHECK(harmonic_dim(2, 5) == 2);
  CHECK(harmonic_dim(3, 4) == 9);
}

TEST_CASE("circle basis is the normalized trigonometric pair") {
  for (int k = 1; k <= 5; ++k)
    for (double th : {0.0, 0.7, 2.9}) {
      const Eigen::VectorXd b = basis(2, k, unit2(th));
      CHECK(b(0) == doctest::Approx(std::sqrt(2.0) * std::cos(k * th)));
      CHECK(b(1) == doctest::Approx(std::sqrt(2.0) * std::sin(k * th)));
    }
  CHECK(basis(2, 0, unit2(1.0))(0) == 1.0);
}

TEST_CASE("sphere basis matches explicit low-degree harmonics up to sign") {
  for (const auto& [th, ph] : {std::pair{0.4, 1.1}, std::pair{2.0, -0.7}, std::pair{1.3, 3.0}}) {
    const Eigen::VectorXd x = unit(th, ph);
    const Eigen::VectorXd b1 = basis(3, 1, x);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(b1(j)) == doctest::Approx(std::abs(oracle::y1(j, x(0), x(1), x(2)))));
    CHECK(std::abs(basis(3, 2, x)(0)) == doctest::Approx(std::abs(oracle::y20(x(2)))));
  }
}

TEST_CASE("sphere basis is orthonormal under an independent quadrature") {
  for (auto [k1, j1, k2, j2] : {std::array{1, 0, 1, 0}, std::array{2, 3, 2, 3}, std::array{2, 1, 3, 1},
                                std::array{3, 4, 3, 5}, std::array{1, 2, 2, 2}}) {
    const double g = sphere_mean([&](const Eigen::VectorXd& x) { return basis(3, k1, x)(j1) * basis(3, k2, x)(j2); });
    CHECK(g == doctest::Approx(k1 == k2 && j1 == j2 ? 1.0 : 0.0).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("zonal harmonics against Fourier and Legendre forms") {
  for (double c : {-0.9, 0.0, 0.35, 1.0}) {
    CHECK(zonal_harmonic(2, 0, c) == 1.0);
    for (int k = 1; k <= 6; ++k) CHECK(zonal_harmonic(2, k, c) == doctest::Approx(2.0 * std::cos(k * std::acos(c))));
    for (int k = 0; k <= 3; ++k) CHECK(zonal_harmonic(3, k, c) == doctest::Approx(oracle::zonal_s2(k, c)));
  }
}

TEST_CASE("ball Poisson kernel closed form and its zonal expansion") {
  Eigen::VectorXd x(2), y = unit2(0.4);
  x << 0.3, -0.2;
  CHECK(poisson_ball(x, y) == doctest::Approx((1.0 - x.squaredNorm()) / (x - y).squaredNorm()));
  const SphericalExpansion P = SphericalExpansion::poisson(3, 60, unit(0.3, 0.2));
  const Eigen::VectorXd z = 0.4 * unit(1.0, 2.0);
  CHECK(std::real(P(z)) == doctest::Approx(poisson_ball(z, unit(0.3, 0.2))).epsilon(1e-12));
}

TEST_CASE("Parseval on the circle and the sphere") {
  for (int n : {2, 3}) {
    const SphericalExpansion f = SphericalExpansion::random(n, 7, 11, 0.8);
    const double m2 = slice_norm(f, 2.0, 0.6, {.sphere_resolution = exact_resolution(n, 7)});
    CHECK(m2 * m2 == doctest::Approx(f.parseval(0.6)).epsilon(1e-12));
  }
}

TEST_CASE("gradient of an expansion against central differences") {
  const SphericalExpansion f = SphericalExpansion::random(3, 5, 4, 0.9);
  const Eigen::VectorXd z = 0.5 * unit(0.8, 0.3);
  double g2 = 0.0;
  for (int d = 0; d < 3; ++d) {
    const Eigen::VectorXd e = 1e-6 * Eigen::VectorXd::Unit(3, d);
    g2 += std::norm((f(z + e) - f(z - e)) / 2e-6);
  }
  CHECK(f.gradient_norm(z) == doctest::Approx(std::sqrt(g2)).epsilon(1e-7));
}

TEST_CASE("fractional multipliers are Gamma ratios") {
  for (int k = 0; k <= 10; ++k) CHECK(fractional_multiplier(2, k, 1.0) == doctest::Approx(k + 1.0));
  CHECK(fractional_multiplier(3, 0, 0.5) == doctest::Approx(2.0 / oracle::pi));
  CHECK(fractional_multiplier(2, 3, 0.0) == 0.0);
  CHECK_THROWS_AS(fractional_multiplier(2, 1, -2.0), std::invalid_argument);
  // Large k through log-gamma: Gamma(k + 1 + 2.5) / (Gamma(k + 1) Gamma(2.5)) ~ k^{2.5} / Gamma(2.5).
  const double big = fractional_multiplier(2, 5000, 2.5);
  CHECK(std::isfinite(big));
  CHECK(big * std::tgamma(2.5) / std::pow(5001.0, 2.5) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("coefficient algebra") {
  const SphericalExpansion f = SphericalExpansion::random(2, 6, 1), g = SphericalExpansion::random(2, 4, 2);
  const SphericalExpansion fg = convolve(f, g), gf = convolve(g, f);
  CHECK(fg.degree() == 4);
  for (int k = 0; k <= 4; ++k) CHECK((fg.coeffs[k] - gf.coeffs[k]).norm() == 0.0);
  CHECK_THROWS_AS(convolve(f, SphericalExpansion::random(3, 4, 2)), std::invalid_argument);
  CHECK_THROWS_AS(apply_multiplier(g, f), std::invalid_argument);
  const SphericalExpansion lf = fractional_derivative(1.0, f);
  for (int k = 0; k <= 6; ++k) CHECK((lf.coeffs[k] - (k + 1.0) * f.coeffs[k]).norm() < 1e-12);
}

TEST_CASE("reproducing identity on the circle with an independent trapezoid rule") {
  const int K = 10;
  const SphericalExpansion f = SphericalExpansion::random(2, K, 8, 0.9);
  std::vector<Complex> c(K + 1);
  for (int k = 0; k <= K; ++k) c[k] = Complex(1.0 / (k + 1), 0.5 * k);
  const MultiplierSequence g = diagonal_multiplier(2, c);
  const SphericalExpansion h = apply_multiplier(g, f);
  const double rho = 0.7;
  const Eigen::VectorXd x = unit2(0.9);
  const int N = 64;
  Complex acc = 0.0;
  for (int i = 0; i < N; ++i) {
    const Eigen::VectorXd y = unit2(2.0 * oracle::pi * i / N);
    acc += g_conv_poisson_slice(g, x, rho, y).value * f(rho * y) / static_cast<double>(N);
  }
  CHECK(std::abs(acc - h(rho * rho * x)) < 1e-12);
}

TEST_CASE("ball norms of constants against Beta integrals") {
  for (int n : {2, 3}) {
    const SphericalExpansion one = SphericalExpansion::constant(n, 2, 1.0);
    CHECK(hardy_norm(one, 3.0) == doctest::Approx(1.0));
    for (double a : {0.0, 0.5, 2.0}) {
      const double exact = 0.5 * oracle::beta(n / 2.0, a + 1.0);
      CHECK(std::pow(bergman_norm(one, 2.0, a), 2.0) == doctest::Approx(exact).epsilon(1e-9));
    }
    // Singular weight: (1 - r^2)^{-0.7} needs the analytic end-interval term.
    const double exact = std::pow(0.5 * oracle::beta(n / 2.0, 0.3), 1.0);
    CHECK(mixed_norm(one, 1.0, 2.0, 0.3) == doctest::Approx(exact).epsilon(1e-7));
    CHECK(sup_norm(one, 1.0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(da_norm(one, 1.0, 0.5) == doctest::Approx(1.0));
  }
  const SphericalExpansion f = SphericalExpansion::random(2, 5, 3, 0.8);
  CHECK(hardy_norm(f, 2.0) == doctest::Approx(std::sqrt(f.parseval(1.0))).epsilon(1e-12));
  CHECK_THROWS_AS(mixed_norm(f, 2.0, 2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sup_norm(f, 0.0), std::invalid_argument);
}

TEST_CASE("DA^p_alpha and DB^{p,p}_{(alpha+1)/p} agree") {
  const SphericalExpansion f = SphericalExpansion::random(3, 4, 9, 0.8);
  for (double p : {1.0, 2.0})
    CHECK(da_norm(f, p, 0.5) == doctest::Approx(db_norm(f, p, p, 1.5 / p)).epsilon(1e-8));
}

TEST_CASE("multiplier functionals: zero, constants and classification") {
  const SphericalExpansion zero = SphericalExpansion::zero(2, 6);
  CHECK(functional_N(zero, 2.0, 1.0).value == 0.0);
  CHECK(functional_L(zero, 2.0, 1, 1.0, 1.0).value == 0.0);
  const FunctionalReport N = functional_N(SphericalExpansion::constant(2, 6, Complex(0.6, 0.8)), 2.0, 0.5);
  CHECK(N.value == doctest::Approx(1.0));
  CHECK(N.argmax_rho == 0.0);
  CHECK_FALSE(N.likely_infinite);
  // Weight exponent m + 1 + beta - alpha = -1: the functional grows like (1 - rho)^{-1}.
  const FunctionalReport M = functional_M(SphericalExpansion::constant(2, 6, 1.0), 2.0, 1, 4.0, 1.0);
  CHECK(M.likely_infinite);
  CHECK(M.trend_slope == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("sufficiency ratios obey the discrete Hölder bound") {
  std::vector<SphericalExpansion> panel;
  for (int i = 0; i < 3; ++i) panel.push_back(SphericalExpansion::random(2, 12, 30 + i, 0.9));
  panel.push_back(SphericalExpansion::zero(2, 12));
  std::vector<Complex> ones(13, 1.0);
  const InequalityReport r = multiplier_inequality_check(diagonal_multiplier(2, ones), panel, {});
  CHECK(r.max_ratio <= 1.0 + 1e-12);
  for (double v : r.ratios.back()) CHECK(v == 0.0);
  InequalityParams bad;
  bad.target = MultiplierTarget::mixed;
  bad.m = 0;
  bad.alpha = 3.0;
  CHECK_THROWS_AS(multiplier_inequality_check(diagonal_multiplier(2, ones), panel, bad), std::invalid_argument);
}

}  // TEST_SUITE
