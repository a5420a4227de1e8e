#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hfs {

/// Least-squares line through (log x, log y).
struct ExponentFit {
  std::vector<double> log_x;
  std::vector<double> log_y;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< max |log y - fitted line|
};

/// Throws std::invalid_argument for fewer than two points or non-positive data.
ExponentFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// Slope check with a self-validating refinement: the fit is repeated on the grid with
/// geometric midpoints inserted (and the refined budget), and passes only when the refined
/// slope is within `tolerance` of `expected` and moved by less than tolerance / 2.
struct ExponentCheck {
  ExponentFit coarse;
  ExponentFit refined;
  double expected = 0.0;
  double tolerance = 0.0;
  double drift = 0.0;
  bool passed = false;
};

ExponentCheck check_exponent(std::span<const double> x, double expected, double tolerance,
                             const std::function<double(double x, bool refined)>& value);

/// Geometric grid lo, lo*ratio, ..., count points.
std::vector<double> geometric_grid(double lo, double ratio, int count);

/// Finite-difference weights (Fornberg) for the derivative of order `order` at 0 on the
/// given offsets, in extended precision.
std::vector<long double> fd_weights(int order, std::span<const long double> offsets);

/// Central finite-difference derivative of order `order` of g at x with step h on 2*half+1
/// points, evaluated in extended precision.
long double fd_derivative(const std::function<long double(long double)>& g, long double x, int order,
                          long double h, int half);

}  // namespace hfs
