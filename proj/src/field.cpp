#include "hfs/field.hpp"

#include "hfs/kernels.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace hfs::fields {

namespace {

std::string point_tag(const Point& w) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < w.dim(); ++i) os << w.x[i] << ",";
  os << w.t << ")";
  return os.str();
}

}  // namespace

HarmonicField zero(int n) {
  return {n, "zero", [](const Point&) { return 0.0; }, SpatialVector::Zero(n)};
}

HarmonicField constant(int n, double c) {
  std::ostringstream os;
  os << "const" << c;
  return {n, os.str(), [c](const Point&) { return c; }, SpatialVector::Zero(n)};
}

HarmonicField poisson_slice(const Point& w) {
  const int n = w.dim();
  return {n, "poisson" + point_tag(w),
          [w, n](const Point& z) { return poisson(n, (z.x - w.x).squaredNorm(), z.t + w.t); }, w.x};
}

HarmonicField bergman(int l, const Point& w) {
  const int n = w.dim();
  return {n, "bergman" + std::to_string(l) + point_tag(w),
          [w, q = BergmanKernel(l, n)](const Point& z) { return q((z.x - w.x).squaredNorm(), z.t + w.t); },
          w.x};
}

HarmonicField test_function(const Point& w, int l) {
  const int n = w.dim();
  if (n == 1) throw std::invalid_argument("test_function: the family is degenerate for n = 1");
  return {n, "testfn" + std::to_string(l) + point_tag(w),
          [w, f = TestFunctionKernel(l, n)](const Point& z) { return f((z.x - w.x).squaredNorm(), z.t + w.t); },
          w.x};
}

HarmonicField power_t(int n, double exponent) {
  std::ostringstream os;
  os << "tpow" << exponent;
  return {n, os.str(), [exponent](const Point& z) { return std::pow(z.t, exponent); },
          SpatialVector::Zero(n)};
}

HarmonicField homogeneous_plane(double a, double phi, double s0) {
  std::ostringstream os;
  os << "homog" << a << "_" << phi << "_" << s0;
  const std::complex<double> rot = std::polar(1.0, phi);
  return {1, os.str(),
          [=](const Point& z) {
            return std::real(rot * std::pow(std::complex<double>(z.x[0], z.t + s0), -a));
          },
          std::nullopt};
}

HarmonicField scaled(HarmonicField f, double c) {
  std::ostringstream os;
  os << c << "*" << f.id;
  auto fn = f.fn;
  return {f.n, os.str(), [fn, c](const Point& z) { return c * fn(z); }, f.radial_center};
}

HarmonicField sum(HarmonicField f, HarmonicField g) {
  if (f.n != g.n) throw std::invalid_argument("fields::sum: dimension mismatch");
  std::optional<SpatialVector> center;
  if (f.radial_center && g.radial_center && *f.radial_center == *g.radial_center)
    center = f.radial_center;
  auto a = f.fn, b = g.fn;
  return {f.n, f.id + "+" + g.id, [a, b](const Point& z) { return a(z) + b(z); }, center};
}

MultiVarField product(std::vector<HarmonicField> factors) {
  if (factors.empty()) throw std::invalid_argument("fields::product: no factors");
  MultiVarField F;
  F.n = factors.front().n;
  F.m = static_cast<int>(factors.size());
  for (std::size_t j = 0; j < factors.size(); ++j) F.id += (j ? "x" : "") + factors[j].id;
  F.factors = factors;
  F.fn = [factors](std::span<const Point> z) {
    double v = 1.0;
    for (std::size_t j = 0; j < factors.size(); ++j) v *= factors[j](z[j]);
    return v;
  };
  return F;
}

}  // namespace hfs::fields
