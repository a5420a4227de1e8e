#pragma once

#include "hfs/field.hpp"
#include "hfs/geometry.hpp"
#include "hfs/quadrature.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hfs {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A norm value together with the truncation region and quadrature budget it was computed on.
struct NormValue {
  double value = 0.0;
  Region region{};
  std::string quad_id;

  operator double() const { return value; }
};

/// M_p(f, t) = ||f(., t)||_{L^p(dx)} over the truncated slice; p = kInfinity gives the max.
NormValue slice_norm(const HarmonicField& f, double p, double t, const QuadratureSpec& quad);

/// (integral |f|^p t^alpha dx dt)^{1/p} over the region. Throws for alpha <= -1 or p <= 0.
NormValue bergman_norm(const HarmonicField& f, double p, double alpha, const QuadratureSpec& quad);

/// (integral M_q(f,t)^p t^{alpha p - 1} dt)^{1/p}; for p = kInfinity, sup_t t^alpha M_q(f, t)
/// over the outer t nodes. Throws for alpha <= 0.
NormValue mixed_norm_B(const HarmonicField& f, double p, double q, double alpha,
                       const QuadratureSpec& quad);

/// (integral (integral |f(x,t)|^q t^{alpha q - 1} dt)^{p/q} dx)^{1/p}. Throws for alpha <= 0.
NormValue triebel_norm(const HarmonicField& f, double p, double q, double alpha,
                       const QuadratureSpec& quad);

/// Deterministic sampling budget for sup norms.
struct SampleSpec {
  Region region{};
  int samples = 4096;    ///< Halton points in (x, log t)
  int starts = 8;        ///< best samples refined by pattern search
  int refine_iters = 80;
};

struct SupResult {
  double value = 0.0;
  Point argmax;
  Region region{};

  operator double() const { return value; }
};

/// sup t^lambda |f(x, t)| over the region, with the maximizing point.
SupResult sup_norm_A_infty(const HarmonicField& f, double lambda, const SampleSpec& spec);

/// Max of |f| over a per_axis^{n+1} grid of the closed cube (faces included).
double cube_max_abs(const HarmonicField& f, const WhitneyCube& cube, int per_axis = 3);

/// (sum_k eta_k^{alpha p - 1} max_{cube k} |f|^p |cube k|)^{1/p}. Throws for alpha <= 0.
double whitney_discrete_norm(const HarmonicField& f, double p, double alpha,
                             std::span<const WhitneyCube> cubes, int per_axis = 3);

/// One cube of the local mean-value comparison:
/// lhs = eta^{alpha p - 1} max_cube |f|^p, rhs = |cube*|^{-1} integral_{cube*} t^{alpha p - 1} |f|^p.
struct LocalBoundRow {
  WhitneyCube cube;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

std::vector<LocalBoundRow> local_bound_table(const HarmonicField& f, double p, double alpha,
                                             std::span<const WhitneyCube> cubes,
                                             double factor = 1.25, int order = 6,
                                             int per_axis = 5);

/// Tensor Gauss-Legendre integral of g over a box in R^{n+1} (index n is t).
double integrate_box(const Box& box, int order, const std::function<double(const Point&)>& g);

/// Points of the Halton sequence (bases 2, 3, 5, ...) in [0, 1)^dim, skipping the first `skip`.
std::vector<Eigen::VectorXd> halton_points(int dim, int count, int skip = 20);

}  // namespace hfs
