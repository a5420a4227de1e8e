#include "hfs/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hfs {

ExponentFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_loglog: need two or more points");
  ExponentFit f;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("fit_loglog: data must be positive");
    f.log_x.push_back(std::log(x[i]));
    f.log_y.push_back(std::log(y[i]));
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += f.log_x[i];
    sy += f.log_y[i];
    sxx += f.log_x[i] * f.log_x[i];
    sxy += f.log_x[i] * f.log_y[i];
  }
  const double den = n * sxx - sx * sx;
  if (!(den > 0.0)) throw std::invalid_argument("fit_loglog: abscissae must not coincide");
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.residual = std::max(f.residual, std::abs(f.log_y[i] - f.intercept - f.slope * f.log_x[i]));
  return f;
}

ExponentCheck check_exponent(std::span<const double> x, double expected, double tolerance,
                             const std::function<double(double, bool)>& value) {
  ExponentCheck c;
  c.expected = expected;
  c.tolerance = tolerance;
  std::vector<double> y;
  for (double xi : x) y.push_back(value(xi, false));
  c.coarse = fit_loglog(x, y);

  std::vector<double> xr, yr;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xr.push_back(x[i]);
    if (i + 1 < x.size()) xr.push_back(std::sqrt(x[i] * x[i + 1]));
  }
  for (double xi : xr) yr.push_back(value(xi, true));
  c.refined = fit_loglog(xr, yr);
  c.drift = std::abs(c.refined.slope - c.coarse.slope);
  c.passed = std::abs(c.refined.slope - expected) <= tolerance && c.drift < tolerance / 2.0;
  return c;
}

std::vector<double> geometric_grid(double lo, double ratio, int count) {
  std::vector<double> g;
  double v = lo;
  for (int i = 0; i < count; ++i, v *= ratio) g.push_back(v);
  return g;
}

std::vector<long double> fd_weights(int order, std::span<const long double> offsets) {
  const int n = static_cast<int>(offsets.size());
  if (order < 0 || order >= n) throw std::invalid_argument("fd_weights: need order < number of offsets");
  // Fornberg's recursion, keeping all derivative orders up to `order`.
  std::vector<std::vector<long double>> c(static_cast<std::size_t>(n), std::vector<long double>(order + 1, 0.0L));
  long double c1 = 1.0L, c4 = offsets[0];
  c[0][0] = 1.0L;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    long double c2 = 1.0L;
    const long double c5 = c4;
    c4 = offsets[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) {
      const long double c3 = offsets[static_cast<std::size_t>(i)] - offsets[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<long double> w;
  for (int i = 0; i < n; ++i) w.push_back(c[i][order]);
  return w;
}

long double fd_derivative(const std::function<long double(long double)>& g, long double x, int order,
                          long double h, int half) {
  std::vector<long double> offsets;
  for (int i = -half; i <= half; ++i) offsets.push_back(static_cast<long double>(i));
  const std::vector<long double> w = fd_weights(order, offsets);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < offsets.size(); ++i) acc += w[i] * g(x + offsets[i] * h);
  return acc / std::pow(h, static_cast<long double>(order));
}

}  // namespace hfs
