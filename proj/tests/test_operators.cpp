#include "oracles.hpp"

#include "hfs/operators.hpp"

#include <doctest.h>

using namespace hfs;

namespace {

QuadratureSpec graded_around(double s, int order, double spread) {
  QuadratureSpec q;
  q.region = {spread * s, s / spread, spread * s};
  q.layout = Layout::graded;
  q.graded_h0 = 0.25 * s;
  q.order = order;
  return q;
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("trace restricts a product field to the diagonal") {
  const HarmonicField f = fields::poisson_slice(make_point({0.0}, 1.0));
  const HarmonicField g = fields::bergman(1, make_point({0.5}, 0.5));
  const MultiVarField F = fields::product({f, g});
  const HarmonicField tr = trace(F);
  const Point z = make_point({0.3}, 0.4);
  CHECK(tr(z) == doctest::Approx(f(z) * g(z)).epsilon(1e-15));
}

TEST_CASE("reproducing integral recovers a bounded harmonic function") {
  // f(z) = integral Q_k(z, w) f(w) s^k dw for f = P(., w0) on R^2_+, k = 1.
  const Point w0 = make_point({0.0}, 1.0);
  const HarmonicField g = fields::poisson_slice(w0);
  const MultiVarField F = extend(g, 1, 1, graded_around(1.0, 8, 1024.0));
  for (const Point& z : {make_point({0.2}, 0.8), make_point({-0.5}, 1.5)}) {
    const std::vector<Point> zs{z};
    CHECK(F(zs) == doctest::Approx(oracle::poisson_n1(z.x(0), z.t + 1.0)).epsilon(2e-3));
  }
}

TEST_CASE("extension is symmetric in its slots and linear") {
  const HarmonicField g = fields::bergman(0, make_point({0.0, 0.0}, 1.0));
  const QuadratureSpec q = graded_around(1.0, 3, 16.0);
  const MultiVarField F = extend(g, 2, 1, q);
  const MultiVarField G = extend(fields::scaled(g, 2.0), 2, 1, q);
  const std::vector<Point> a{make_point({0.1, 0.2}, 0.5), make_point({-0.3, 0.0}, 1.2)};
  const std::vector<Point> b{a[1], a[0]};
  CHECK(F(a) == F(b));
  CHECK(G(a) == doctest::Approx(2.0 * F(a)).epsilon(1e-14));
  CHECK(extend(fields::zero(2), 2, 1, q)(a) == 0.0);
}

TEST_CASE("extension parameter checks") {
  const HarmonicField g = fields::poisson_slice(make_point({0.0}, 1.0));
  const QuadratureSpec q = graded_around(1.0, 2, 4.0);
  CHECK_THROWS_AS(extend(g, 0, 1, q), std::invalid_argument);
  CHECK_THROWS_AS(extend(g, 1, -1, q), std::invalid_argument);
  CHECK_THROWS_AS(extend(g, 1, 1, q, 2.5), std::invalid_argument);
  CHECK_NOTHROW(extend(g, 1, 2, q, 2.5));
}

TEST_CASE("S_{a,b} is linear and checks its exponent lists") {
  const HarmonicField f = fields::bergman(2, make_point({0.0}, 1.0));
  const QuadratureSpec q = graded_around(1.0, 3, 16.0);
  const std::vector<double> a{0.0, 0.5}, b{2.5, 2.0}, short_b{2.5};
  const MultiVarField S = s_ab(f, a, b, q);
  const MultiVarField S3 = s_ab(fields::scaled(f, 3.0), a, b, q);
  const std::vector<Point> z{make_point({0.2}, 0.7), make_point({-0.1}, 1.1)};
  CHECK(S3(z) == doctest::Approx(3.0 * S(z)).epsilon(1e-13));
  CHECK_THROWS_AS(s_ab(f, a, short_b, q), std::invalid_argument);
}

TEST_CASE("product-bound ratio for the zero field vanishes") {
  const std::vector<double> s{0.0, 0.5};
  const RatioReport r = lemma7_check(fields::product({fields::zero(1), fields::zero(1)}), 2.0, s,
                                     graded_around(1.0, 2, 4.0));
  CHECK(r.lhs == 0.0);
  CHECK(r.ratio == 0.0);
}

TEST_CASE("V set membership") {
  const HarmonicField f = fields::constant(1, 2.0);
  CHECK(v_set_member(f, 1.0, 1.0, make_point({0.0}, 0.5)));
  CHECK_FALSE(v_set_member(f, 1.0, 1.0, make_point({0.0}, 0.4)));
}

TEST_CASE("distance split bookkeeping") {
  const HarmonicField f = fields::bergman(0, make_point({0.0}, 0.25));
  const QuadratureSpec q = graded_around(0.25, 3, 64.0);
  const SplitResult none = distance_split(f, 1e6, 1.5, 1, 0.5, q);
  CHECK(none.nodes_in_v == 0);
  const Point z = make_point({0.1}, 0.3);
  CHECK(none.f2(z) == 0.0);
  const SplitResult all = distance_split(f, 1e-30, 1.5, 1, 0.5, q);
  CHECK(all.nodes_in_v == all.nodes_total);
  CHECK(all.f1(z) == 0.0);
  CHECK_THROWS_AS(distance_split(f, 1.0, 1.5, 0, 0.5, q), std::invalid_argument);
}

TEST_CASE("dictionary distance of a dictionary member is zero") {
  const HarmonicField a = fields::bergman(0, make_point({0.0}, 1.0));
  const HarmonicField b = fields::bergman(1, make_point({1.0}, 0.5));
  const std::vector<HarmonicField> dict{a, b};
  SampleSpec spec;
  spec.region = {4.0, 0.125, 8.0};
  spec.samples = 256;
  const DictionaryFit fit = dictionary_distance(fields::sum(fields::scaled(a, 2.0), b), dict, 1.5, spec);
  REQUIRE(fit.coeffs.size() == 2);
  CHECK(fit.coeffs[0] == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(fit.coeffs[1] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(fit.sup_residual < 1e-8);
}

}  // TEST_SUITE
