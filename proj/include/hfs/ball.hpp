#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hfs::ball {

using Complex = std::complex<double>;

/// Dimension d_k of the degree-k spherical harmonics on S^{n-1} in R^n.
int harmonic_dim(int n, int k);

/// Real spherical harmonics of degree k at the unit vector xp, orthonormal for the
/// normalized surface measure. n = 2: 1 | sqrt2 cos(k th), sqrt2 sin(k th).
/// n = 3: m = 0 first, then (cos m phi, sin m phi) pairs for m = 1..k.
/// Throws std::invalid_argument for n outside {2, 3}.
Eigen::VectorXd basis(int n, int k, const Eigen::VectorXd& xp);

/// Values and angular derivatives of the degree-k basis at xp. Row 0 holds the values;
/// row 1 holds d/dtheta; for n = 3 row 2 holds (1/sin theta) d/dphi.
Eigen::MatrixXd basis_with_derivatives(int n, int k, const Eigen::VectorXd& xp);

/// Zonal harmonic Z_k(cos gamma) = sum_j Y_j(x') Y_j(y'): n = 2 gives 1 and 2 cos(k gamma),
/// n >= 3 gives (2k + n - 2)/(n - 2) C_k^{(n-2)/2}(cos gamma).
double zonal_harmonic(int n, int k, double cos_gamma);

/// Ball Poisson kernel for the normalized sphere measure: (1 - |x|^2) / |x - y'|^n.
double poisson_ball(const Eigen::VectorXd& x, const Eigen::VectorXd& yp);

/// Truncated harmonic expansion f(r x') = sum_{k <= K} r^k sum_j b_k^j Y_j^{(k)}(x').
struct SphericalExpansion {
  int n = 2;
  std::vector<Eigen::VectorXcd> coeffs;  ///< coeffs[k] has harmonic_dim(n, k) entries

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  static SphericalExpansion zero(int n, int K);
  static SphericalExpansion constant(int n, int K, Complex value);
  /// b_k^j = Y_j^{(k)}(xp): the expansion of the Poisson kernel P(., xp).
  static SphericalExpansion poisson(int n, int K, const Eigen::VectorXd& xp);
  /// Independent complex normal coefficients scaled by decay^k.
  static SphericalExpansion random(int n, int K, std::uint64_t seed, double decay = 1.0);

  Complex operator()(const Eigen::VectorXd& x) const;
  /// |grad f(x)| (complex gradient, Euclidean norm of the component moduli). x != 0 for n = 3 poles excluded.
  double gradient_norm(const Eigen::VectorXd& x) const;
  /// Coefficient-space norm sum_k r^{2k} sum_j |b_k^j|^2 (Parseval for M_2(f, r)^2).
  double parseval(double r) const;
  SphericalExpansion truncated(int K) const;
};

/// A double-indexed multiplier sequence c_k^j; g_c is the expansion with these coefficients.
using MultiplierSequence = SphericalExpansion;

/// Coefficientwise product b_k^j(f) b_k^j(g), capped at the smaller degree.
SphericalExpansion convolve(const SphericalExpansion& f, const SphericalExpansion& g);
/// Coefficientwise c_k^j b_k^j(f). Throws on shape mismatch.
SphericalExpansion apply_multiplier(const MultiplierSequence& c, const SphericalExpansion& f);
/// Gamma(k + n/2 + t) / (Gamma(k + n/2) Gamma(t)), via log-gamma with signs.
/// Throws for t a negative integer or when k + n/2 + t is a pole. t = 0 gives 0.
double fractional_multiplier(int n, int k, double t);
SphericalExpansion fractional_derivative(double t, const SphericalExpansion& f);
/// Diagonal sequence c_k^j = values[k].
MultiplierSequence diagonal_multiplier(int n, std::span<const Complex> values);

/// (g * P_{x'})(rho y') = sum_k rho^k sum_j c_k^j Y_j(x') Y_j(y'), with a tail bound
/// max_k|c_k| * sum_{k > K} rho^k d_k over the truncated degrees.
struct SeriesValue {
  Complex value;
  double tail_bound = 0.0;
};
SeriesValue g_conv_poisson_slice(const MultiplierSequence& g, const Eigen::VectorXd& xp, double rho,
                                 const Eigen::VectorXd& yp);

/// Quadrature on S^{n-1} with weights summing to 1. n = 2: trapezoid with `resolution` points
/// (exact for trigonometric degree < resolution). n = 3: Gauss-Legendre in cos(theta) with
/// `resolution` nodes times 2*resolution trapezoid nodes in phi.
struct SphereGrid {
  int n = 2;
  std::vector<Eigen::VectorXd> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};
SphereGrid make_sphere_grid(int n, int resolution);
/// Resolution integrating products of two degree-K expansions exactly.
int exact_resolution(int n, int K);
/// Finer default for non-quadratic integrands: n = 2 gives max(4(K+1), 64), n = 3 gives max(2(K+1), 24).
int default_resolution(int n, int K);

/// Radial rule on [0, 1] with panels 1 - 2^{-i}, i = 0..levels, `order` nodes each.
/// The end interval [1 - gap, 1] is left to an analytic tail term in the weighted integrals.
struct RadialRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double gap = 0.0;
};
RadialRule make_radial_rule(int levels = 40, int order = 8);

/// Norm budget for ball integrals.
struct BallSpec {
  int sphere_resolution = 0;  ///< 0: default_resolution(n, degree)
  int radial_levels = 40;
  int radial_order = 8;
};

/// M_p(f, r) over the normalized sphere measure; p = infinity gives the grid max.
double slice_norm(const SphericalExpansion& f, double p, double r, const BallSpec& spec = {});
/// sup_r M_s(f, r) over the radial nodes and r = 1.
double hardy_norm(const SphericalExpansion& f, double s, const BallSpec& spec = {});
/// (integral_B |f|^p (1 - |x|^2)^alpha r^{n-1} dr dsigma)^{1/p}. Throws for alpha <= -1.
double bergman_norm(const SphericalExpansion& f, double p, double alpha, const BallSpec& spec = {});
/// sup (1 - r^2)^alpha |f| over radial nodes and the sphere grid. Throws for alpha <= 0.
double sup_norm(const SphericalExpansion& f, double alpha, const BallSpec& spec = {});
/// (integral_0^1 M_q(f, r)^p (1 - r^2)^{alpha p - 1} r^{n-1} dr)^{1/p}; p = infinity gives
/// sup (1 - r^2)^alpha M_q(f, r). Throws for alpha <= 0.
double mixed_norm(const SphericalExpansion& f, double p, double q, double alpha, const BallSpec& spec = {});
/// |f(0)| + || |grad f| ||_{A^p_alpha}.
double da_norm(const SphericalExpansion& f, double p, double alpha, const BallSpec& spec = {});
/// |f(0)| + || |grad f| ||_{p,q,alpha}.
double db_norm(const SphericalExpansion& f, double p, double q, double alpha, const BallSpec& spec = {});

/// The multiplier functionals: sup over rho in {1 - 2^{-i}} and y' in the sphere grid of
/// (1 - rho)^weight_exponent (integral_S |Lambda_t (g * P_{x'})(rho y')|^s dx')^{1/s}.
/// lambda_order = 0 means no fractional derivative.
struct FunctionalSpec {
  double weight_exponent = 0.0;
  double s = 2.0;
  double lambda_order = 0.0;
  int rho_levels = 12;
  int sphere_resolution = 0;  ///< 0: exact_resolution(n, degree)
};

struct FunctionalReport {
  double value = 0.0;
  double argmax_rho = 0.0;
  std::vector<double> rho;
  std::vector<double> per_rho;  ///< sup over y' at each rho
  double trend_slope = 0.0;     ///< d log(per_rho) / d log(1/(1-rho)) over the last 4 points
  bool likely_infinite = false; ///< trend_slope > 0.05
};

FunctionalReport multiplier_functional(const MultiplierSequence& g, const FunctionalSpec& spec);

/// N_{s'}(g): weight beta, exponent s', no derivative.
FunctionalReport functional_N(const MultiplierSequence& g, double s_conj, double beta, int rho_levels = 12);
/// M_{q'}(g): weight m + 1 + beta - alpha, exponent q', derivative of order m + 1.
FunctionalReport functional_M(const MultiplierSequence& g, double q_conj, int m, double alpha, double beta,
                              int rho_levels = 12);
/// L_{s'}(g): weight m + 2 + beta - alpha, exponent s', derivative of order m + 1.
FunctionalReport functional_L(const MultiplierSequence& g, double s_conj, int m, double alpha, double beta,
                              int rho_levels = 12);
/// K_{s'}(g): weight m + 1 + beta - alpha, exponent s', derivative of order m + 1.
FunctionalReport functional_K(const MultiplierSequence& g, double s_conj, int m, double alpha, double beta,
                              int rho_levels = 12);

/// Sufficiency table for a multiplier c and a panel of inputs f: per (f, r) the ratio
///   Hardy target:  (1 - r)^beta M_inf(c*f, r^2) / (N_{s'}(g) M_s(f, r))
///   Mixed target:  (1 - r)^{m+1+beta} M_inf(Lambda_{m+1}(c*f), r^2) / ((1 - r)^alpha M_{q'}(g) M_q(f, r))
/// on r in {1 - 2^{-i}}, i = 0..rho_levels. M_inf, M_s and the functional share one sphere grid
/// of exact resolution, so the discrete Hölder inequality gives ratios <= 1 up to rounding.
struct InequalityReport {
  std::vector<std::vector<double>> ratios;  ///< [f][r]
  double max_ratio = 0.0;
  double functional = 0.0;
};

enum class MultiplierTarget { hardy, mixed };

struct InequalityParams {
  MultiplierTarget target = MultiplierTarget::hardy;
  double s = 2.0;      ///< Hardy exponent s (hardy) or q (mixed)
  double beta = 1.0;
  double alpha = 1.0;  ///< mixed only
  int m = 1;           ///< mixed only
  int rho_levels = 12;
};

InequalityReport multiplier_inequality_check(const MultiplierSequence& c,
                                             std::span<const SphericalExpansion> panel,
                                             const InequalityParams& params);

}  // namespace hfs::ball
