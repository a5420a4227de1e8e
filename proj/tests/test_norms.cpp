#include "oracles.hpp"

#include "hfs/field.hpp"
#include "hfs/fit.hpp"
#include "hfs/norms.hpp"
#include "hfs/quadrature.hpp"

#include <doctest.h>

using namespace hfs;

namespace {

QuadratureSpec graded(double x_max, double t_min, double t_max, int order, double h0 = 0.125) {
  QuadratureSpec q;
  q.region = {x_max, t_min, t_max};
  q.layout = Layout::graded;
  q.graded_h0 = h0;
  q.order = order;
  return q;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre is exact to degree 2k - 1") {
  for (int k = 1; k <= 12; ++k) {
    const GaussLegendre& g = gauss_legendre(k);
    for (int d = 0; d <= 2 * k - 1; ++d) {
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += g.weights[i] * std::pow(g.nodes[i], d);
      CHECK(s == doctest::Approx(d % 2 ? 0.0 : 2.0 / (d + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("break sequences") {
  const auto g = geometric_breaks(1.0, 10.0, 2.0);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 10.0);
  CHECK(g.size() == 5);  // 1 2 4 8 10
  const auto d = dyadic_breaks(0.3, 5.0);
  CHECK(d == std::vector<double>{0.3, 0.5, 1.0, 2.0, 4.0, 5.0});
  const auto e = endpoint_graded_breaks(3);
  CHECK(e == std::vector<double>{0.0, 0.5, 0.75, 0.875});
  const auto gb = graded_breaks(0.0, 0.25, -1.0, 1.0);
  CHECK(gb.front() == -1.0);
  CHECK(gb.back() == 1.0);
  CHECK(std::find(gb.begin(), gb.end(), 0.0) != gb.end());
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(1) == doctest::Approx(2.0));
  CHECK(sphere_area(2) == doctest::Approx(2.0 * oracle::pi));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * oracle::pi));
}

TEST_CASE("box integration is exact for low-degree polynomials") {
  Box b;
  b.lo = Eigen::Vector2d(-1.0, 0.5);
  b.hi = Eigen::Vector2d(2.0, 1.5);
  const double v = integrate_box(b, 3, [](const Point& z) { return z.x(0) * z.x(0) * z.t; });
  CHECK(v == doctest::Approx(3.0 * 1.0));  // (integral x^2 over [-1,2]) (integral t over [0.5,1.5]) = 3 * 1
}

TEST_CASE("Halton points lie in the unit cube") {
  for (const auto& p : halton_points(3, 200)) CHECK(((p.array() >= 0.0) && (p.array() < 1.0)).all());
}

TEST_CASE("specs validate their parameters") {
  QuadratureSpec q;
  q.order = 1;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q.order = 4;
  q.region = {1.0, 2.0, 1.0};
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  CHECK(QuadratureSpec{}.refined().order == 8);
}

}  // TEST_SUITE

TEST_SUITE("norms") {

TEST_CASE("Poisson slice norms for n = 1") {
  const Point w = make_point({0.0}, 0.5);
  const HarmonicField f = fields::poisson_slice(w);
  const double X = 16.0, t = 0.75, tau = t + 0.5;
  const QuadratureSpec q = graded(X, 0.25, 4.0, 8);
  CHECK(slice_norm(f, 1.0, t, q).value == doctest::Approx(2.0 / oracle::pi * std::atan(X / tau)).epsilon(1e-9));
  // The max runs over quadrature nodes, so it sits just below the exact sup at x = 0.
  const double sup = slice_norm(f, kInfinity, t, q).value;
  CHECK(sup <= 1.0 / (oracle::pi * tau));
  CHECK(sup == doctest::Approx(1.0 / (oracle::pi * tau)).epsilon(1e-3));
  CHECK(std::pow(slice_norm(f, 2.0, t, q).value, 2) ==
        doctest::Approx(oracle::poisson_sq_line_integral(X, tau)).epsilon(1e-9));
}

TEST_CASE("Bergman and mixed norms of the Poisson kernel against 1-D oracles") {
  const Point w = make_point({0.0}, 0.5);
  const HarmonicField f = fields::poisson_slice(w);
  const double X = 16.0, t0 = 0.25, t1 = 4.0;
  const QuadratureSpec q = graded(X, t0, t1, 8);
  const double alpha = 0.5;
  const double bergman_sq = oracle::simpson(
      [&](double t) { return std::pow(t, alpha) * oracle::poisson_sq_line_integral(X, t + 0.5); }, t0, t1, 1e-13);
  CHECK(std::pow(bergman_norm(f, 2.0, alpha, q).value, 2) == doctest::Approx(bergman_sq).epsilon(1e-7));
  const double mixed_sq = oracle::simpson(
      [&](double t) { return std::pow(t, 2.0 * alpha - 1.0) * oracle::poisson_sq_line_integral(X, t + 0.5); }, t0,
      t1, 1e-13);
  CHECK(std::pow(mixed_norm_B(f, 2.0, 2.0, alpha, q).value, 2) == doctest::Approx(mixed_sq).epsilon(1e-7));
}

TEST_CASE("A^p_alpha equals the mixed norm with q = p and exponent (alpha + 1)/p") {
  // A positive field: |f|^p stays smooth, so the two discretizations agree to rounding.
  const HarmonicField f = fields::poisson_slice(make_point({0.2}, 0.7));
  const QuadratureSpec q = graded(8.0, 0.125, 8.0, 10);
  for (double p : {1.0, 2.0, 3.0}) {
    const double a = 0.5;
    CHECK(bergman_norm(f, p, a, q).value == doctest::Approx(mixed_norm_B(f, p, p, (a + 1.0) / p, q).value).epsilon(1e-10));
    CHECK(triebel_norm(f, p, p, (a + 1.0) / p, q).value ==
          doctest::Approx(mixed_norm_B(f, p, p, (a + 1.0) / p, q).value).epsilon(1e-10));
  }
}

TEST_CASE("norms are absolutely homogeneous and vanish on zero") {
  const HarmonicField f = fields::poisson_slice(make_point({0.1, -0.2}, 0.6));
  const HarmonicField g = fields::scaled(f, -3.0);
  const QuadratureSpec q = graded(4.0, 0.25, 4.0, 4);
  CHECK(bergman_norm(g, 2.0, 1.0, q).value == doctest::Approx(3.0 * bergman_norm(f, 2.0, 1.0, q).value));
  CHECK(mixed_norm_B(g, 3.0, 2.0, 0.5, q).value == doctest::Approx(3.0 * mixed_norm_B(f, 3.0, 2.0, 0.5, q).value));
  CHECK(triebel_norm(g, 2.0, 3.0, 0.5, q).value == doctest::Approx(3.0 * triebel_norm(f, 2.0, 3.0, 0.5, q).value));
  CHECK(bergman_norm(fields::zero(2), 2.0, 1.0, q).value == 0.0);
  CHECK_THROWS_AS(bergman_norm(f, 2.0, -1.0, q), std::invalid_argument);
  CHECK_THROWS_AS(mixed_norm_B(f, 2.0, 2.0, 0.0, q), std::invalid_argument);
}

TEST_CASE("A^infty sup of the Poisson kernel on the axis") {
  // sup_t t^lambda / (pi (t + s)) at t = lambda s / (1 - lambda).
  const double s = 1.0, lambda = 0.5;
  SampleSpec spec;
  spec.region = {4.0, 1.0 / 16, 16.0};
  const SupResult r = sup_norm_A_infty(fields::poisson_slice(make_point({0.0}, s)), lambda, spec);
  CHECK(r.value == doctest::Approx(1.0 / (2.0 * oracle::pi)).epsilon(1e-6));
  CHECK(r.argmax.t == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("Whitney discrete norm dominates the integral norm up to cube constants") {
  const HarmonicField f = fields::poisson_slice(make_point({0.0}, 0.5));
  const auto cubes = whitney_cubes({4.0, 0.25, 4.0}, 1);
  const double d = whitney_discrete_norm(f, 2.0, 1.0, cubes);
  const double b = mixed_norm_B(f, 2.0, 2.0, 1.0, graded(4.0, 0.25, 4.0, 6)).value;
  CHECK(d > 0.0);
  CHECK(d / b > 0.5);
  CHECK(d / b < 4.0);
}

}  // TEST_SUITE

TEST_SUITE("fit") {

TEST_CASE("log-log fit recovers exact power laws") {
  const auto x = geometric_grid(0.25, 2.0, 6);
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.5));
  const ExponentFit fit = fit_loglog(x, y);
  CHECK(fit.slope == doctest::Approx(-1.5).epsilon(1e-13));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-13));
  CHECK(fit.residual < 1e-12);
  CHECK_THROWS_AS(fit_loglog(std::span(x).first(1), std::span(y).first(1)), std::invalid_argument);
  y[2] = -1.0;
  CHECK_THROWS_AS(fit_loglog(x, y), std::invalid_argument);
}

TEST_CASE("exponent check passes on exact data and fails on a wrong exponent") {
  const auto x = geometric_grid(1.0, 2.0, 5);
  const auto ok = check_exponent(x, 2.0, 0.1, [](double v, bool) { return v * v; });
  CHECK(ok.passed);
  CHECK(ok.drift < 1e-12);
  const auto bad = check_exponent(x, 1.0, 0.1, [](double v, bool) { return v * v; });
  CHECK_FALSE(bad.passed);
  // A value that depends on the refinement flag drifts.
  const auto drifting = check_exponent(x, 2.0, 0.1, [](double v, bool r) { return std::pow(v, r ? 2.2 : 2.0); });
  CHECK_FALSE(drifting.passed);
}

}  // TEST_SUITE
