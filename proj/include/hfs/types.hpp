#pragma once

#include <Eigen/Core>

#include <initializer_list>
#include <string>

namespace hfs {

/// Largest spatial dimension n supported by the stack-allocated point type.
inline constexpr int kMaxSpatialDim = 8;

/// Spatial coordinate x in R^n. Dynamic size, fixed capacity: no heap traffic in
/// quadrature inner loops.
using SpatialVector =
    Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxSpatialDim, 1>;

/// A point z = (x, t) of the upper half-space R^{n+1}_+.
struct Point {
  SpatialVector x;
  double t = 1.0;

  int dim() const { return static_cast<int>(x.size()); }
};

Point make_point(std::initializer_list<double> x, double t);
Point origin_point(int n, double t);

/// |z - w̄|^2 = |x - y|^2 + (t + s)^2.
inline double reflected_distance_sq(const Point& z, const Point& w) {
  const double tau = z.t + w.t;
  return (z.x - w.x).squaredNorm() + tau * tau;
}

double reflected_distance(const Point& z, const Point& w);

/// Truncation box [-x_max, x_max]^n x [t_min, t_max] used by every computation
/// that stands in for an integral over the full half-space.
struct Region {
  double x_max = 1.0;
  double t_min = 0.5;
  double t_max = 2.0;

  bool valid() const { return x_max > 0.0 && t_min > 0.0 && t_min < t_max; }
  /// Same region with x_max and t_max doubled and t_min halved.
  Region doubled() const { return {2.0 * x_max, 0.5 * t_min, 2.0 * t_max}; }
  std::string id() const;
};

/// Closed axis-parallel box in R^{n+1}; index n is the t axis.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dim() const { return static_cast<int>(lo.size()) - 1; }
  Eigen::VectorXd center() const { return 0.5 * (lo + hi); }
  double volume() const { return (hi - lo).prod(); }
  bool contains(const Point& z) const;
  bool contains_interior(const Point& z) const;
  /// Volume of the intersection with another box (0 when they only touch).
  double overlap_volume(const Box& other) const;
};

}  // namespace hfs
