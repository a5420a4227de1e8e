#pragma once

#include "hfs/fit.hpp"
#include "hfs/quadrature.hpp"
#include "hfs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace hfs::verify::detail {

inline std::string fmt(double v) { return io::format_double(v); }

/// (max - min) / max|v|.
inline double relative_spread(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  return scale > 0.0 ? (*hi - *lo) / scale : 0.0;
}

inline double max_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

/// Budget-dependent integer: smoke, standard, deep.
inline int tier(Budget b, int smoke, int standard, int deep) {
  return b == Budget::smoke ? smoke : (b == Budget::standard ? standard : deep);
}

/// Graded budget for a field living at scale `scale`: region [-spread, spread]^n x [1/spread, spread]
/// in units of scale, innermost spatial panel scale / 4.
inline QuadratureSpec scaled_spec(double scale, int order, double spread = 64.0) {
  QuadratureSpec q;
  q.region = {spread * scale, scale / spread, spread * scale};
  q.layout = Layout::graded;
  q.graded_h0 = 0.25 * scale;
  q.order = order;
  return q;
}

/// Records an exponent check as a check plus a CSV trace.
inline void record_exponent(ExperimentResult& r, const std::string& name, const ExponentCheck& c) {
  r.checks.push_back(check_near(name + ".slope", c.refined.slope, c.expected, c.tolerance));
  r.checks.push_back(check_le(name + ".drift", c.drift, c.tolerance / 2.0, "slope change under grid doubling"));
  r.fitted_constants[name + ".slope"] = c.refined.slope;
  r.fitted_constants[name + ".slope_coarse"] = c.coarse.slope;
  r.fitted_constants[name + ".log_constant"] = c.refined.intercept;
  r.fitted_constants[name + ".residual"] = c.refined.residual;
  io::CsvTable t{{"grid", "log_x", "log_y"}, {}};
  for (std::size_t i = 0; i < c.coarse.log_x.size(); ++i)
    t.add_row({"coarse", fmt(c.coarse.log_x[i]), fmt(c.coarse.log_y[i])});
  for (std::size_t i = 0; i < c.refined.log_x.size(); ++i)
    t.add_row({"refined", fmt(c.refined.log_x[i]), fmt(c.refined.log_y[i])});
  r.artifacts.push_back({name, std::move(t)});
}

}  // namespace hfs::verify::detail
