#pragma once

#include "hfs/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hfs {

/// Closed dyadic cube of the layered family: spatial side 2^level on the lattice
/// 2^level Z^n, t-extent [2^level, 2^{level+1}].
struct WhitneyCube {
  int level = 0;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxSpatialDim, 1> index;

  int dim() const { return static_cast<int>(index.size()); }
  double side() const;
  double t_lo() const { return side(); }
  double t_hi() const { return 2.0 * side(); }
  /// Center (xi, eta) with eta = 1.5 * 2^level.
  Point center() const;
  double eta() const { return 1.5 * side(); }
  double diameter() const;
  /// Distance from the cube to the boundary t = 0, i.e. 2^level.
  double boundary_distance() const { return side(); }
  /// Lebesgue measure |cube| = side^{n+1}.
  double volume() const;
  Box box() const;
  std::string id() const;

  friend bool operator==(const WhitneyCube&, const WhitneyCube&) = default;
};

/// Cube of the layered family whose half-open cell [k 2^j, (k+1) 2^j) x [2^j, 2^{j+1}) contains z.
WhitneyCube cube_containing(const Point& z);

/// All cubes whose interior meets the interior of the region box
/// [-x_max, x_max]^n x [t_min, t_max], ordered by (level, index) lexicographically.
/// Empty when the region is degenerate.
std::vector<WhitneyCube> whitney_cubes(const Region& region, int n);

/// Concentric box with side scaled by factor in [1, 4/3). Throws std::invalid_argument otherwise.
Box enlarge(const WhitneyCube& cube, double factor = 1.25);

/// Number of boxes containing z (closed boxes).
int overlap_count(const Point& z, std::span<const Box> boxes);

/// Exact integral of t^lambda over the box. Throws std::invalid_argument for lambda <= -1.
double weighted_measure(const Box& box, double lambda);
double weighted_measure(const WhitneyCube& cube, double lambda);

/// Number of enlarged cubes of the whole (untruncated) family containing z.
int covering_count(const Point& z, double factor = 1.25);

/// Largest covering_count over `samples` random points of the region
/// (x uniform, log t uniform).
int empirical_overlap_max(const Region& region, int n, int samples, std::uint64_t seed,
                          double factor = 1.25);

}  // namespace hfs
