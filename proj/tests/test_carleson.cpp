#include "oracles.hpp"

#include "hfs/carleson.hpp"
#include "hfs/kernels.hpp"

#include <doctest.h>

using namespace hfs;

namespace {

WhitneyCube cube(int level, std::initializer_list<std::int64_t> idx) {
  WhitneyCube c;
  c.level = level;
  c.index.resize(static_cast<Eigen::Index>(idx.size()));
  int i = 0;
  for (auto v : idx) c.index(i++) = v;
  return c;
}

}  // namespace

TEST_SUITE("carleson") {

TEST_CASE("atomic measure bookkeeping") {
  AtomicMeasure mu{1, {}};
  mu.add(make_point({0.5}, 1.5), 2.0);
  mu.add(make_point({-0.5}, 0.75), 1.0);
  CHECK(mu.total_mass() == 3.0);
  CHECK(mu.mass(cube(0, {0}).box()) == 2.0);
  CHECK_THROWS_AS(mu.add(make_point({0.0}, 1.0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(mu.add(make_point({0.0}, -1.0), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(mu.add(make_point({0.0, 0.0}, 1.0), 1.0), std::invalid_argument);
  const AtomicMeasure d = mu.dilated(2.0, 3.0);
  CHECK(d.total_mass() == 24.0);
  CHECK(d.atoms[0].z.x(0) == 1.0);
  CHECK(d.atoms[0].z.t == 3.0);
}

TEST_CASE("atoms on shared faces count for every closed cube") {
  AtomicMeasure mu{1, {}};
  mu.add(make_point({0.0}, 1.0), 1.0);
  const std::vector<WhitneyCube> cubes{cube(0, {0}), cube(0, {-1}), cube(-1, {0}), cube(-1, {-1}), cube(0, {1})};
  const auto m = cube_masses(mu, cubes);
  CHECK(m == std::vector<double>{1.0, 1.0, 1.0, 1.0, 0.0});
}

TEST_CASE("single atom: each condition's ratio matches its closed form") {
  AtomicMeasure mu{2, {}};
  mu.add(make_point({0.25, 0.25}, 0.75), 5.0);
  const std::vector<WhitneyCube> cubes{cube(-1, {0, 0})};
  const double side = 0.5, vol = std::pow(side, 3), eta = 0.75;
  const std::vector<double> s{0.5, 1.0};
  CHECK(carleson_constant_T2(mu, cubes, 2, s).sup == doctest::Approx(5.0 / std::pow(vol, 2.0 + 1.5 / 3.0)));
  CHECK(carleson_constant_C1(mu, cubes, 2.0).sup == doctest::Approx(5.0 / std::pow(vol, 1.0 + 2.0 / 3.0)));
  CHECK(carleson_constant_T3(mu, cubes, 2.0, 4.0, 0.5).sup == doctest::Approx(5.0 / std::pow(eta, 2.0 * 4.0 / 2.0 + 2.0)));
  CHECK(carleson_constant_T4(mu, cubes, 2.0, 1.0).sup == doctest::Approx(5.0 / std::pow(eta, 2.0 + 2.0)));
  CHECK(carleson_constant_T4(mu, cubes, 2.0, 1.0).argmax == "L-1[0,0]");
}

TEST_CASE("zero measure has zero constants and condition parameters are checked") {
  const AtomicMeasure mu{1, {}};
  const auto cubes = whitney_cubes({1.0, 0.25, 2.0}, 1);
  const std::vector<double> s{0.0};
  CHECK(carleson_constant_T2(mu, cubes, 1, s).sup == 0.0);
  CHECK(carleson_constant_T2(mu, cubes, 1, s).argmax.empty());
  const std::vector<double> bad{-1.0};
  CHECK_THROWS_AS(carleson_constant_T2(mu, cubes, 1, bad), std::invalid_argument);
  CHECK_THROWS_AS(carleson_constant_C1(mu, cubes, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(carleson_constant_T3(mu, cubes, 3.0, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(carleson_constant_T4(mu, cubes, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("discretized weighted volume carries the exact region mass") {
  const auto cubes = whitney_cubes({1.0, 0.25, 4.0}, 1);
  for (double lambda : {0.0, 2.0}) {
    const AtomicMeasure mu = discretize_weighted_volume(cubes, lambda);
    CHECK(mu.atoms.size() == cubes.size());
    // Levels -2..0 span x in [-1, 1]; the two level-1 cubes span x in [-2, 2].
    CHECK(mu.total_mass() == doctest::Approx(oracle::weighted_box(-1.0, 1.0, 0.25, 2.0, lambda) +
                                             oracle::weighted_box(-2.0, 2.0, 2.0, 4.0, lambda)));
  }
}

TEST_CASE("C1 constant is invariant under the matching dilation") {
  // (x, t) -> (2x, 2t) maps cubes to cubes one level up; with weights scaled by 2^{n+1+alpha}
  // every ratio mu(Q) / |Q|^{1 + alpha/(n+1)} is unchanged.
  const int n = 1;
  const double alpha = 1.5;
  const auto cubes = whitney_cubes({1.0, 0.25, 2.0}, n);
  const auto cubes2 = whitney_cubes({2.0, 0.5, 4.0}, n);
  const AtomicMeasure mu = discretize_weighted_volume(cubes, 3.0);
  const double a = carleson_constant_C1(mu, cubes, alpha).sup;
  const double b = carleson_constant_C1(mu.dilated(2.0, n + 1 + alpha), cubes2, alpha).sup;
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("embedding ratio for a single atom") {
  AtomicMeasure mu{1, {}};
  const Point z = make_point({0.3}, 0.9);
  mu.add(z, 2.0);
  const HarmonicField f = fields::poisson_slice(make_point({0.0}, 1.0));
  const std::vector<FamilyMember> fam{{"p", {f}, 4.0}};
  const EmbeddingResult r = embedding_ratio(mu, fam, 2.0);
  CHECK(r.sup == doctest::Approx(2.0 * std::pow(f(z), 2) / 4.0));
  CHECK(r.argmax == "p");
  const std::vector<FamilyMember> bad{{"b", {f}, 0.0}};
  CHECK_THROWS_AS(embedding_ratio(mu, bad, 2.0), std::invalid_argument);
}

TEST_CASE("sequence growth") {
  const std::vector<double> v{0.0, 2.0, 1.0, 10.0};
  CHECK(sequence_growth(v) == 5.0);
  const std::vector<double> z{0.0, 0.0};
  CHECK(sequence_growth(z) == 0.0);
}

TEST_CASE("T_w mass and the cover of Q_w") {
  const Point w = make_point({0.0, 0.0}, 1.0);
  const Box q = qw_cube(w);
  CHECK(q.volume() == doctest::Approx(1.0));
  AtomicMeasure mu{2, {}};
  mu.add(w, 1.0);
  mu.add(make_point({3.0, 0.0}, 1.0), 1.0);
  CHECK(tw_mass(mu, w, 0, default_delta(0, 2)) == 1.0);
  const CoverCheck c = lemma6_cover_check(w, 0, default_delta(0, 2), 2000, 3);
  CHECK(c.covered());
  CHECK(c.family_size > 0);
}

}  // TEST_SUITE
