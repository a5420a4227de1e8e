#pragma once

#include "hfs/types.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hfs {

/// Scalar field on the half-space R^{n+1}_+. A declared radial center c means the
/// field depends on x only through |x - c|; norms may then integrate in (r, t).
struct HarmonicField {
  int n = 1;
  std::string id;
  std::function<double(const Point&)> fn;
  std::optional<SpatialVector> radial_center;

  double operator()(const Point& z) const { return fn(z); }
};

/// Field of m half-space variables (z_1, ..., z_m), each in R^{n+1}_+.
struct MultiVarField {
  int n = 1;
  int m = 1;
  std::string id;
  std::function<double(std::span<const Point>)> fn;
  /// Non-empty when the field is the tensor product of these one-variable factors.
  std::vector<HarmonicField> factors;

  double operator()(std::span<const Point> z) const { return fn(z); }
};

namespace fields {

HarmonicField zero(int n);
HarmonicField constant(int n, double c);
/// z -> P(x - y, t + s): the Poisson kernel of the reflected pole w = (y, s).
HarmonicField poisson_slice(const Point& w);
/// z -> Q_l(z, w).
HarmonicField bergman(int l, const Point& w);
/// z -> f_{w,l}(z). Throws for n = 1.
HarmonicField test_function(const Point& w, int l);
/// z -> t^exponent (harmonic only for exponent in {0, 1}; used as a weight profile).
HarmonicField power_t(int n, double exponent);
/// n = 1: z -> Re(e^{i phi} (x + i(t + s0))^{-a}).
HarmonicField homogeneous_plane(double a, double phi, double s0);
HarmonicField scaled(HarmonicField f, double c);
HarmonicField sum(HarmonicField f, HarmonicField g);

/// (z_1, ..., z_m) -> prod_j f_j(z_j).
MultiVarField product(std::vector<HarmonicField> factors);

}  // namespace fields

}  // namespace hfs
