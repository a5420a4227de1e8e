#include "hfs/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hfs {

Point make_point(std::initializer_list<double> x, double t) {
  Point z;
  z.x.resize(static_cast<Eigen::Index>(x.size()));
  Eigen::Index i = 0;
  for (double v : x) z.x[i++] = v;
  z.t = t;
  return z;
}

Point origin_point(int n, double t) {
  Point z;
  z.x = SpatialVector::Zero(n);
  z.t = t;
  return z;
}

double reflected_distance(const Point& z, const Point& w) {
  return std::sqrt(reflected_distance_sq(z, w));
}

std::string Region::id() const {
  std::ostringstream os;
  os << "x" << x_max << "_t" << t_min << "-" << t_max;
  return os.str();
}

bool Box::contains(const Point& z) const {
  const int n = dim();
  for (int i = 0; i < n; ++i)
    if (z.x[i] < lo[i] || z.x[i] > hi[i]) return false;
  return z.t >= lo[n] && z.t <= hi[n];
}

bool Box::contains_interior(const Point& z) const {
  const int n = dim();
  for (int i = 0; i < n; ++i)
    if (z.x[i] <= lo[i] || z.x[i] >= hi[i]) return false;
  return z.t > lo[n] && z.t < hi[n];
}

double Box::overlap_volume(const Box& other) const {
  double v = 1.0;
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    const double len = std::min(hi[i], other.hi[i]) - std::max(lo[i], other.lo[i]);
    if (len <= 0.0) return 0.0;
    v *= len;
  }
  return v;
}

}  // namespace hfs
