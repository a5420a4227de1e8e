#include "oracles.hpp"

#include "hfs/geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

using namespace hfs;

TEST_SUITE("geometry") {

TEST_CASE("cube accessors follow the layered lattice") {
  WhitneyCube c;
  c.level = -2;
  c.index.resize(2);
  c.index << 3, -1;
  CHECK(c.side() == 0.25);
  CHECK(c.t_lo() == 0.25);
  CHECK(c.t_hi() == 0.5);
  CHECK(c.eta() == doctest::Approx(0.375));
  CHECK(c.volume() == doctest::Approx(std::pow(0.25, 3)));
  CHECK(c.center().x(0) == doctest::Approx(0.875));
  CHECK(c.center().x(1) == doctest::Approx(-0.125));
  CHECK(c.id() == "L-2[3,-1]");
}

TEST_CASE("diameter over boundary distance is sqrt(n + 1) on every level") {
  for (int n : {1, 2, 3}) {
    for (int level = -5; level <= 5; ++level) {
      WhitneyCube c;
      c.level = level;
      c.index.setZero(n);
      CHECK(c.diameter() / c.boundary_distance() == doctest::Approx(std::sqrt(n + 1.0)).epsilon(1e-14));
    }
  }
}

TEST_CASE("region cube counts match hand enumeration") {
  // n = 1, x in [-1, 1], t in [1/4, 4]: levels -2..1 with 8, 4, 2, 2 cells.
  const auto cubes = whitney_cubes({1.0, 0.25, 4.0}, 1);
  std::map<int, int> per_level;
  for (const auto& c : cubes) ++per_level[c.level];
  CHECK(cubes.size() == 16);
  CHECK(per_level[-2] == 8);
  CHECK(per_level[-1] == 4);
  CHECK(per_level[0] == 2);
  CHECK(per_level[1] == 2);
  // n = 2 squares the spatial counts.
  CHECK(whitney_cubes({1.0, 0.25, 4.0}, 2).size() == 64 + 16 + 4 + 4);
  CHECK(whitney_cubes({1.0, 2.0, 1.0}, 1).empty());
}

TEST_CASE("cubes of a region have disjoint interiors and cover it") {
  const Region region{1.0, 0.125, 2.0};
  for (int n : {1, 2}) {
    const auto cubes = whitney_cubes(region, n);
    double overlap = 0.0;
    for (std::size_t i = 0; i < cubes.size(); ++i)
      for (std::size_t j = i + 1; j < cubes.size(); ++j) overlap += cubes[i].box().overlap_volume(cubes[j].box());
    CHECK(overlap == 0.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), ut(0.125, 2.0);
    for (int s = 0; s < 500; ++s) {
      Point z = origin_point(n, ut(rng));
      for (int i = 0; i < n; ++i) z.x(i) = ux(rng);
      const WhitneyCube c = cube_containing(z);
      CHECK(c.box().contains(z));
      CHECK(std::find(cubes.begin(), cubes.end(), c) != cubes.end());
    }
  }
}

TEST_CASE("weighted measure matches the closed-form box integral") {
  WhitneyCube c;
  c.level = 1;
  c.index.resize(1);
  c.index << -3;
  for (double lambda : {0.0, 1.0, -0.5, 2.5}) {
    const double exact = oracle::weighted_box(-6.0, -4.0, 2.0, 4.0, lambda);
    CHECK(weighted_measure(c, lambda) == doctest::Approx(exact).epsilon(1e-14));
  }
  CHECK_THROWS_AS(weighted_measure(c, -1.0), std::invalid_argument);
}

TEST_CASE("weighted measure scales as side^{n+1+lambda}") {
  for (double lambda : {0.0, 0.5, 3.0}) {
    WhitneyCube a, b;
    a.level = -3;
    b.level = 2;
    a.index.setZero(2);
    b.index.setZero(2);
    const double ratio_a = weighted_measure(a, lambda) / std::pow(a.eta(), 3.0 + lambda);
    const double ratio_b = weighted_measure(b, lambda) / std::pow(b.eta(), 3.0 + lambda);
    CHECK(ratio_a == doctest::Approx(ratio_b).epsilon(1e-13));
  }
}

TEST_CASE("enlargement factor is range checked and counts overlaps") {
  WhitneyCube c;
  c.level = 0;
  c.index.setZero(1);
  const Box e = enlarge(c, 1.25);
  CHECK(e.volume() == doctest::Approx(c.volume() * 1.25 * 1.25));
  CHECK_THROWS_AS(enlarge(c, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(enlarge(c, 4.0 / 3.0), std::invalid_argument);
  // Every point is covered at least once by the enlarged family.
  for (double t : {0.3, 1.0, 1.99, 7.0}) CHECK(covering_count(make_point({0.1}, t)) >= 1);
}

TEST_CASE("overlap count of a point on a shared corner") {
  // The corner (0, 1) of the n = 1 family lies in the closed cubes L0[-1], L0[0] and the two
  // level -1 cubes below it.
  const auto cubes = whitney_cubes({1.0, 0.5, 2.0}, 1);
  std::vector<Box> boxes;
  for (const auto& c : cubes) boxes.push_back(c.box());
  CHECK(overlap_count(make_point({0.0}, 1.0), boxes) == 4);
  CHECK(overlap_count(make_point({0.25}, 1.5), boxes) == 1);
}

}  // TEST_SUITE
