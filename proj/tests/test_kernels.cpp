#include "oracles.hpp"

#include "hfs/fit.hpp"
#include "hfs/kernels.hpp"

#include <doctest.h>

#include <random>

using namespace hfs;

TEST_SUITE("kernels") {

TEST_CASE("Poisson kernel closed forms for n = 1, 2") {
  for (double x : {0.0, 0.3, -2.0})
    for (double t : {0.1, 1.0, 5.0}) {
      CHECK(poisson(make_point({x}, t).x, t) == doctest::Approx(oracle::poisson_n1(x, t)).epsilon(1e-14));
      CHECK(poisson(make_point({x, 0.5}, t).x, t) ==
            doctest::Approx(oracle::poisson_n2(x * x + 0.25, t)).epsilon(1e-14));
    }
  CHECK(poisson_constant(1) == doctest::Approx(1.0 / oracle::pi));
  CHECK(poisson_constant(2) == doctest::Approx(0.5 / oracle::pi));
  CHECK_THROWS_AS(poisson(make_point({0.0}, 1.0).x, 0.0), std::invalid_argument);
}

TEST_CASE("Poisson kernel integrates to one over a line") {
  const double t = 0.7, X = 1e4;
  const double num = oracle::simpson([&](double x) { return poisson(make_point({x}, t).x, t); }, -X, X, 1e-12);
  CHECK(num == doctest::Approx(2.0 / oracle::pi * std::atan(X / t)).epsilon(1e-9));
}

TEST_CASE("Q_l for n = 1 against the complex-variable closed form") {
  for (int l = 0; l <= 4; ++l)
    for (double x : {0.0, 0.4, -1.5, 3.0})
      for (double tau : {0.2, 1.0, 2.5}) {
        const double q = bergman_q(l, make_point({x + 0.5}, tau - 0.1), make_point({0.5}, 0.1));
        CHECK(q == doctest::Approx(oracle::bergman_q_n1(l, x, tau)).epsilon(1e-12));
      }
}

TEST_CASE("Q_l on the axis for n = 1") {
  for (int l = 0; l <= 3; ++l) {
    const double tau = 1.7;
    const double expected = std::pow(2.0, l + 1) * (l + 1) / (oracle::pi * std::pow(tau, l + 2));
    CHECK(bergman_q(l, 1, 0.0, tau) == doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK_THROWS_AS(bergman_q(0, make_point({0.0}, 0.0), make_point({0.0}, 1.0)), std::invalid_argument);
}

TEST_CASE("Q_l is symmetric under z <-> w") {
  const Point z = make_point({0.3, -0.2}, 0.6), w = make_point({-1.0, 0.4}, 1.3);
  for (int l = 0; l <= 3; ++l) CHECK(bergman_q(l, z, w) == doctest::Approx(bergman_q(l, w, z)).epsilon(1e-14));
}

TEST_CASE("test functions against hand-expanded derivatives") {
  for (int l = 0; l <= 2; ++l)
    for (double rho : {0.0, 0.5, 4.0})
      for (double tau : {0.3, 1.0, 2.0}) {
        CHECK(test_fn(l, 3, rho, tau) == doctest::Approx(oracle::test_fn_n3(l, rho, tau)).epsilon(1e-13));
        CHECK(test_fn(l, 2, rho, tau) == doctest::Approx(oracle::test_fn_n2(l, rho, tau)).epsilon(1e-13));
      }
  const Point w = make_point({0.0, 0.0}, 1.0);
  CHECK_THROWS_AS(test_fn(make_point({0.0}, 1.0), 0, make_point({0.0}, 1.0)), std::invalid_argument);
  CHECK(test_fn(w, 1, make_point({0.3, 0.4}, 0.5)) == doctest::Approx(oracle::test_fn_n2(1, 0.25, 1.5)));
}

TEST_CASE("derivative polynomial recurrence") {
  // P_1 = -(n - 1) u, P_2 = (n - 1)(n + 1) u^2 - (n - 1) from d^2/dt^2 |z - w̄|^{1-n}.
  for (int n : {2, 3, 4}) {
    const DerivPolynomial& p1 = deriv_polynomial(1, n);
    const DerivPolynomial& p2 = deriv_polynomial(2, n);
    for (double u : {0.0, 0.3, 1.0}) {
      CHECK(p1(u) == doctest::Approx(-(n - 1.0) * u));
      CHECK(p2(u) == doctest::Approx((n - 1.0) * (n + 1.0) * u * u - (n - 1.0)));
    }
  }
  const auto roots = deriv_polynomial(2, 3).roots_in(0.0, 1.0);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(0.5));
}

TEST_CASE("kernels are harmonic: five-point Laplacian is O(h^2)") {
  const Point w = make_point({0.2}, 0.8);
  auto lap = [&](int l, double h) {
    const Point z = make_point({0.5}, 0.6);
    auto f = [&](double dx, double dt) { return bergman_q(l, make_point({z.x(0) + dx}, z.t + dt), w); };
    return (f(h, 0) + f(-h, 0) + f(0, h) + f(0, -h) - 4.0 * f(0, 0)) / (h * h);
  };
  for (int l = 0; l <= 3; ++l) {
    const double r1 = std::abs(lap(l, 0.02)), r2 = std::abs(lap(l, 0.01));
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("finite-difference weights") {
  const std::vector<long double> offsets{-1.0L, 0.0L, 1.0L};
  const auto w = fd_weights(2, offsets);
  CHECK(static_cast<double>(w[0]) == doctest::Approx(1.0));
  CHECK(static_cast<double>(w[1]) == doctest::Approx(-2.0));
  CHECK(static_cast<double>(w[2]) == doctest::Approx(1.0));
  const long double d3 = fd_derivative([](long double x) { return std::exp(x); }, 0.5L, 3, 0.01L, 4);
  CHECK(static_cast<double>(d3) == doctest::Approx(std::exp(0.5)).epsilon(1e-10));
}

TEST_CASE("T_w threshold") {
  CHECK(default_delta(0, 2) == 0.5);
  CHECK(qw_u_min(2) == doctest::Approx(1.5 / std::sqrt(2.75)));
  const double d = default_delta(2, 3);
  CHECK(d > 0.0);
  const Point w = make_point({0.0, 0.0, 0.0}, 1.0);
  CHECK(tw_set_indicator(w, 0, 0.5, w));
}

}  // TEST_SUITE
