#include "hfs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hfs {

double WhitneyCube::side() const { return std::ldexp(1.0, level); }

Point WhitneyCube::center() const {
  Point z;
  const double h = side();
  z.x.resize(dim());
  for (int i = 0; i < dim(); ++i) z.x[i] = (static_cast<double>(index[i]) + 0.5) * h;
  z.t = 1.5 * h;
  return z;
}

double WhitneyCube::diameter() const { return side() * std::sqrt(dim() + 1.0); }

double WhitneyCube::volume() const { return std::pow(side(), dim() + 1); }

Box WhitneyCube::box() const {
  const int n = dim();
  const double h = side();
  Box b;
  b.lo.resize(n + 1);
  b.hi.resize(n + 1);
  for (int i = 0; i < n; ++i) {
    b.lo[i] = static_cast<double>(index[i]) * h;
    b.hi[i] = b.lo[i] + h;
  }
  b.lo[n] = h;
  b.hi[n] = 2.0 * h;
  return b;
}

std::string WhitneyCube::id() const {
  std::ostringstream os;
  os << "L" << level << "[";
  for (int i = 0; i < dim(); ++i) os << (i ? "," : "") << index[i];
  os << "]";
  return os.str();
}

WhitneyCube cube_containing(const Point& z) {
  if (!(z.t > 0.0)) throw std::invalid_argument("cube_containing: t must be positive");
  WhitneyCube c;
  int e = 0;
  std::frexp(z.t, &e);
  c.level = e - 1;
  const double h = std::ldexp(1.0, c.level);
  c.index.resize(z.dim());
  for (int i = 0; i < z.dim(); ++i) c.index[i] = static_cast<std::int64_t>(std::floor(z.x[i] / h));
  return c;
}

std::vector<WhitneyCube> whitney_cubes(const Region& region, int n) {
  std::vector<WhitneyCube> out;
  if (!region.valid() || n < 1 || n > kMaxSpatialDim) return out;
  int e = 0;
  std::frexp(region.t_min, &e);
  int j = e - 1;
  for (; std::ldexp(1.0, j) < region.t_max; ++j) {
    const double h = std::ldexp(1.0, j);
    if (2.0 * h <= region.t_min) continue;
    const auto k_lo = static_cast<std::int64_t>(std::floor(-region.x_max / h));
    const auto k_hi = static_cast<std::int64_t>(std::ceil(region.x_max / h)) - 1;
    WhitneyCube c;
    c.level = j;
    c.index = decltype(c.index)::Constant(n, k_lo);
    while (true) {
      out.push_back(c);
      int a = n - 1;
      for (; a >= 0; --a) {
        if (++c.index[a] <= k_hi) break;
        c.index[a] = k_lo;
      }
      if (a < 0) break;
    }
  }
  return out;
}

Box enlarge(const WhitneyCube& cube, double factor) {
  if (!(factor >= 1.0 && factor < 4.0 / 3.0))
    throw std::invalid_argument("enlarge: factor must lie in [1, 4/3)");
  Box b = cube.box();
  const Eigen::VectorXd c = b.center();
  const double half = 0.5 * factor * cube.side();
  b.lo = c.array() - half;
  b.hi = c.array() + half;
  return b;
}

int overlap_count(const Point& z, std::span<const Box> boxes) {
  int count = 0;
  for (const Box& b : boxes)
    if (b.contains(z)) ++count;
  return count;
}

double weighted_measure(const Box& box, double lambda) {
  if (!(lambda > -1.0)) throw std::invalid_argument("weighted_measure: lambda must exceed -1");
  const int n = box.dim();
  double spatial = 1.0;
  for (int i = 0; i < n; ++i) spatial *= box.hi[i] - box.lo[i];
  const double e = lambda + 1.0;
  return spatial * (std::pow(box.hi[n], e) - std::pow(box.lo[n], e)) / e;
}

double weighted_measure(const WhitneyCube& cube, double lambda) {
  return weighted_measure(cube.box(), lambda);
}

int covering_count(const Point& z, double factor) {
  const int n = z.dim();
  const WhitneyCube home = cube_containing(z);
  int count = 0;
  for (int level = home.level - 2; level <= home.level + 2; ++level) {
    const double h = std::ldexp(1.0, level);
    WhitneyCube c;
    c.level = level;
    c.index.resize(n);
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxSpatialDim, 1> base(n);
    for (int i = 0; i < n; ++i) base[i] = static_cast<std::int64_t>(std::floor(z.x[i] / h)) - 1;
    c.index = base;
    while (true) {
      if (enlarge(c, factor).contains(z)) ++count;
      int a = n - 1;
      for (; a >= 0; --a) {
        if (++c.index[a] <= base[a] + 2) break;
        c.index[a] = base[a];
      }
      if (a < 0) break;
    }
  }
  return count;
}

int empirical_overlap_max(const Region& region, int n, int samples, std::uint64_t seed,
                          double factor) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-region.x_max, region.x_max);
  std::uniform_real_distribution<double> ut(std::log(region.t_min), std::log(region.t_max));
  int best = 0;
  Point z = origin_point(n, 1.0);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) z.x[i] = ux(rng);
    z.t = std::exp(ut(rng));
    best = std::max(best, covering_count(z, factor));
  }
  return best;
}

}  // namespace hfs
