#include "hfs/ball.hpp"

#include "hfs/parallel.hpp"
#include "hfs/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hfs::ball {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_basis_dim(int n) {
  if (n != 2 && n != 3) throw std::invalid_argument("ball: basis supports n = 2 and n = 3 only");
}

double binom(int a, int b) {
  if (b < 0 || a < b) return 0.0;
  return std::round(std::exp(std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0)));
}

// Fully normalized associated Legendre functions Pbar_{l,m}(cos theta) for l <= L, including the
// sqrt(2) of m > 0, and their theta-derivatives. Index l * (L + 1) + m.
struct LegendreTable {
  int L = 0;
  std::vector<double> p, dp;
  double operator()(int l, int m) const { return p[static_cast<std::size_t>(l * (L + 1) + m)]; }
  double d(int l, int m) const { return dp[static_cast<std::size_t>(l * (L + 1) + m)]; }
};

LegendreTable legendre_table(int L, double c, double s) {
  LegendreTable T;
  T.L = L;
  const std::size_t size = static_cast<std::size_t>((L + 1) * (L + 1));
  T.p.assign(size, 0.0);
  T.dp.assign(size, 0.0);
  auto at = [&](int l, int m) { return static_cast<std::size_t>(l * (L + 1) + m); };
  T.p[at(0, 0)] = 1.0;
  for (int m = 0; m <= L; ++m) {
    if (m == 1) {
      T.p[at(1, 1)] = std::sqrt(3.0) * s;
      T.dp[at(1, 1)] = std::sqrt(3.0) * c;
    } else if (m >= 2) {
      const double f = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      T.p[at(m, m)] = f * s * T.p[at(m - 1, m - 1)];
      T.dp[at(m, m)] = f * (c * T.p[at(m - 1, m - 1)] + s * T.dp[at(m - 1, m - 1)]);
    }
    if (m + 1 <= L) {
      const double f = std::sqrt(2.0 * m + 3.0);
      T.p[at(m + 1, m)] = f * c * T.p[at(m, m)];
      T.dp[at(m + 1, m)] = f * (-s * T.p[at(m, m)] + c * T.dp[at(m, m)]);
    }
    for (int l = m + 2; l <= L; ++l) {
      const double a = std::sqrt((2.0 * l - 1.0) * (2.0 * l + 1.0) / ((l - m) * double(l + m)));
      const double b = std::sqrt((2.0 * l + 1.0) * (l + m - 1.0) * (l - m - 1.0) /
                                 ((l - m) * double(l + m) * (2.0 * l - 3.0)));
      T.p[at(l, m)] = a * c * T.p[at(l - 1, m)] - b * T.p[at(l - 2, m)];
      T.dp[at(l, m)] = a * (-s * T.p[at(l - 1, m)] + c * T.dp[at(l - 1, m)]) - b * T.dp[at(l - 2, m)];
    }
  }
  return T;
}

struct Angles {
  double theta = 0.0;  // n = 2: polar angle; n = 3: azimuth phi
  double c = 1.0, s = 0.0;  // n = 3: cos and sin of the colatitude
};

Angles angles_of(int n, const Eigen::VectorXd& xp) {
  if (xp.size() != n) throw std::invalid_argument("ball: point dimension does not match n");
  Angles a;
  if (n == 2) {
    a.theta = std::atan2(xp(1), xp(0));
    return a;
  }
  const double norm = xp.norm();
  a.c = std::clamp(xp(2) / norm, -1.0, 1.0);
  a.s = std::hypot(xp(0), xp(1)) / norm;
  a.theta = std::atan2(xp(1), xp(0));
  if (a.s < 1e-9) {  // move off the pole; the basis and its gradient are continuous there
    a.s = 1e-9;
    a.c = std::copysign(std::sqrt(1.0 - a.s * a.s), a.c);
  }
  return a;
}

// Values (row 0) and angular derivatives (rows 1..n-1) of every degree k <= K.
std::vector<Eigen::MatrixXd> all_bases(int n, int K, const Eigen::VectorXd& xp, bool derivatives) {
  require_basis_dim(n);
  const Angles a = angles_of(n, xp);
  const int rows = derivatives ? n : 1;
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(K + 1));
  const double r2 = std::numbers::sqrt2;
  if (n == 2) {
    for (int k = 0; k <= K; ++k) {
      Eigen::MatrixXd& B = out[static_cast<std::size_t>(k)];
      if (k == 0) {
        B = Eigen::MatrixXd::Zero(rows, 1);
        B(0, 0) = 1.0;
        continue;
      }
      B.resize(rows, 2);
      const double ck = std::cos(k * a.theta), sk = std::sin(k * a.theta);
      B(0, 0) = r2 * ck;
      B(0, 1) = r2 * sk;
      if (derivatives) {
        B(1, 0) = -r2 * k * sk;
        B(1, 1) = r2 * k * ck;
      }
    }
    return out;
  }
  const LegendreTable T = legendre_table(K, a.c, a.s);
  for (int l = 0; l <= K; ++l) {
    Eigen::MatrixXd& B = out[static_cast<std::size_t>(l)];
    B = Eigen::MatrixXd::Zero(rows, 2 * l + 1);
    B(0, 0) = T(l, 0);
    if (derivatives) B(1, 0) = T.d(l, 0);
    for (int m = 1; m <= l; ++m) {
      const double cm = std::cos(m * a.theta), sm = std::sin(m * a.theta);
      B(0, 2 * m - 1) = T(l, m) * cm;
      B(0, 2 * m) = T(l, m) * sm;
      if (derivatives) {
        B(1, 2 * m - 1) = T.d(l, m) * cm;
        B(1, 2 * m) = T.d(l, m) * sm;
        B(2, 2 * m - 1) = -m * T(l, m) * sm / a.s;
        B(2, 2 * m) = m * T(l, m) * cm / a.s;
      }
    }
  }
  return out;
}

Eigen::VectorXd unit_e1(int n) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e(0) = 1.0;
  return e;
}

void require_same_n(const SphericalExpansion& f, const SphericalExpansion& g) {
  if (f.n != g.n) throw std::invalid_argument("ball: expansions live in different dimensions");
}

bool is_diagonal(const SphericalExpansion& g) {
  for (const auto& c : g.coeffs)
    for (Eigen::Index j = 1; j < c.size(); ++j)
      if (c(j) != c(0)) return false;
  return true;
}

// Basis values (and derivatives) of all degrees at every point of a sphere grid, flattened to
// N x D matrices with D = sum_k d_k.
struct GridBasis {
  int n = 2;
  int K = 0;
  SphereGrid grid;
  std::vector<Eigen::Index> offset;  // first column of degree k
  Eigen::MatrixXd B;
  std::vector<Eigen::MatrixXd> dB;  // angular derivative matrices

  Eigen::Index dim() const { return B.cols(); }
};

GridBasis make_grid_basis(int n, int K, int resolution, bool derivatives) {
  GridBasis G;
  G.n = n;
  G.K = K;
  G.grid = make_sphere_grid(n, resolution);
  Eigen::Index D = 0;
  for (int k = 0; k <= K; ++k) {
    G.offset.push_back(D);
    D += harmonic_dim(n, k);
  }
  const auto N = static_cast<Eigen::Index>(G.grid.size());
  G.B.resize(N, D);
  if (derivatives) G.dB.assign(static_cast<std::size_t>(n - 1), Eigen::MatrixXd(N, D));
  for (Eigen::Index i = 0; i < N; ++i) {
    const auto bases = all_bases(n, K, G.grid.points[static_cast<std::size_t>(i)], derivatives);
    for (int k = 0; k <= K; ++k) {
      const Eigen::MatrixXd& Bk = bases[static_cast<std::size_t>(k)];
      const Eigen::Index o = G.offset[static_cast<std::size_t>(k)];
      G.B.row(i).segment(o, Bk.cols()) = Bk.row(0);
      for (int d = 0; d + 1 < n && derivatives; ++d)
        G.dB[static_cast<std::size_t>(d)].row(i).segment(o, Bk.cols()) = Bk.row(d + 1);
    }
  }
  return G;
}

// Flattened coefficients with degree-k block scaled by scale(k).
template <class Scale>
Eigen::VectorXcd flatten(const SphericalExpansion& f, const GridBasis& G, Scale&& scale) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(G.dim());
  const int K = std::min(f.degree(), G.K);
  for (int k = 0; k <= K; ++k)
    v.segment(G.offset[static_cast<std::size_t>(k)], harmonic_dim(f.n, k)) =
        f.coeffs[static_cast<std::size_t>(k)] * scale(k);
  return v;
}

Eigen::VectorXd grid_abs(const GridBasis& G, const SphericalExpansion& f, double r) {
  const Eigen::VectorXcd v = G.B.cast<Complex>() * flatten(f, G, [r](int k) { return std::pow(r, k); });
  return v.cwiseAbs();
}

Eigen::VectorXd grid_gradient_abs(const GridBasis& G, const SphericalExpansion& f, double r) {
  const Eigen::VectorXcd radial =
      G.B.cast<Complex>() * flatten(f, G, [r](int k) { return k == 0 ? 0.0 : k * std::pow(r, k - 1); });
  Eigen::VectorXd sq = radial.cwiseAbs2();
  const Eigen::VectorXcd tangential = flatten(f, G, [r](int k) { return k == 0 ? 0.0 : std::pow(r, k - 1); });
  for (const Eigen::MatrixXd& D : G.dB) sq += (D.cast<Complex>() * tangential).cwiseAbs2();
  return sq.cwiseSqrt();
}

double grid_mean_power(const SphereGrid& grid, const Eigen::VectorXd& a, double p) {
  if (std::isinf(p)) return a.size() ? a.maxCoeff() : 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += grid.weights[static_cast<std::size_t>(i)] * std::pow(a(i), p);
  return std::pow(acc, 1.0 / p);
}

int resolve_resolution(int n, int K, int requested) {
  return requested > 0 ? requested : default_resolution(n, K);
}

// M_q of f (or |grad f|) at every radial node.
struct RadialProfile {
  RadialRule rule;
  std::vector<double> m;
};

RadialProfile radial_profile(const SphericalExpansion& f, double q, bool gradient, const BallSpec& spec) {
  RadialProfile P;
  P.rule = make_radial_rule(spec.radial_levels, spec.radial_order);
  const GridBasis G = make_grid_basis(f.n, f.degree(), resolve_resolution(f.n, f.degree(), spec.sphere_resolution),
                                      gradient);
  P.m.assign(P.rule.nodes.size(), 0.0);
  parallel_map(P.m, [&](std::size_t i) {
    const double r = P.rule.nodes[i];
    return grid_mean_power(G.grid, gradient ? grid_gradient_abs(G, f, r) : grid_abs(G, f, r), q);
  });
  return P;
}

double weighted_radial_integral(const RadialProfile& P, int n, double power, double exponent) {
  double acc = 0.0;
  for (std::size_t i = 0; i < P.m.size(); ++i) {
    const double r = P.rule.nodes[i];
    acc += P.rule.weights[i] * std::pow(P.m[i], power) * std::pow(1.0 - r * r, exponent) * std::pow(r, n - 1);
  }
  // Uncovered end interval: M is continuous up to the sphere and 1 - r^2 ~ 2(1 - r) there.
  if (!P.m.empty() && P.rule.gap > 0.0)
    acc += std::pow(P.m.back(), power) * std::pow(2.0, exponent) * std::pow(P.rule.gap, exponent + 1.0) /
           (exponent + 1.0);
  return acc;
}

double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  return static_cast<long long>(std::ceil(-x)) % 2 == 1 ? -1.0 : 1.0;
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double trend_slope(const std::vector<double>& rho, const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const std::size_t start = n >= 4 ? n - 4 : 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = start; i < n; ++i) {
    if (!(values[i] > 0.0)) return 0.0;
    const double x = -std::log(1.0 - rho[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double den = count * sxx - sx * sx;
  return den > 0.0 ? (count * sxy - sx * sy) / den : 0.0;
}

std::vector<double> rho_grid(int levels) {
  std::vector<double> rho;
  for (int i = 0; i <= levels; ++i) rho.push_back(1.0 - std::ldexp(1.0, -i));
  return rho;
}

// sup over y' of (sum_x w |H(x, y')|^s)^{1/s} for the kernel with degree multipliers d_k.
double kernel_slice_sup(const SphericalExpansion& g, const GridBasis& G, const std::vector<Complex>& degree_scale,
                        double s, bool zonal) {
  const auto N = static_cast<Eigen::Index>(G.grid.size());
  if (zonal) {
    // H(x, y') depends on x . y' only; integrate against the first grid point as y'.
    const Eigen::VectorXd& y = G.grid.points[0];
    Eigen::VectorXd a(N);
    for (Eigen::Index i = 0; i < N; ++i) {
      const double u = std::clamp(G.grid.points[static_cast<std::size_t>(i)].dot(y), -1.0, 1.0);
      Complex acc = 0.0;
      for (int k = 0; k <= std::min(g.degree(), G.K); ++k)
        acc += degree_scale[static_cast<std::size_t>(k)] * g.coeffs[static_cast<std::size_t>(k)](0) *
               zonal_harmonic(g.n, k, u);
      a(i) = std::abs(acc);
    }
    return grid_mean_power(G.grid, a, s);
  }
  const Eigen::VectorXcd d = flatten(g, G, [&](int k) { return degree_scale[static_cast<std::size_t>(k)]; });
  const Eigen::MatrixXcd left = G.B.cast<Complex>() * d.asDiagonal();
  const Eigen::MatrixXcd H = left * G.B.transpose().cast<Complex>();
  double best = 0.0;
  for (Eigen::Index j = 0; j < N; ++j) best = std::max(best, grid_mean_power(G.grid, H.col(j).cwiseAbs(), s));
  return best;
}

double conjugate(double s) {
  if (s <= 1.0) throw std::invalid_argument("ball: exponent must exceed 1");
  return std::isinf(s) ? 1.0 : s / (s - 1.0);
}

}  // namespace

int harmonic_dim(int n, int k) {
  if (n < 2 || k < 0) throw std::invalid_argument("harmonic_dim: need n >= 2 and k >= 0");
  if (n == 2) return k == 0 ? 1 : 2;
  return static_cast<int>(binom(k + n - 1, n - 1) - binom(k + n - 3, n - 1));
}

Eigen::VectorXd basis(int n, int k, const Eigen::VectorXd& xp) {
  if (k < 0) throw std::invalid_argument("basis: negative degree");
  return all_bases(n, k, xp, false)[static_cast<std::size_t>(k)].row(0).transpose();
}

Eigen::MatrixXd basis_with_derivatives(int n, int k, const Eigen::VectorXd& xp) {
  if (k < 0) throw std::invalid_argument("basis: negative degree");
  return all_bases(n, k, xp, true)[static_cast<std::size_t>(k)];
}

double zonal_harmonic(int n, int k, double cos_gamma) {
  if (n < 2 || k < 0) throw std::invalid_argument("zonal_harmonic: need n >= 2 and k >= 0");
  const double u = std::clamp(cos_gamma, -1.0, 1.0);
  if (k == 0) return 1.0;
  if (n == 2) return 2.0 * std::cos(k * std::acos(u));
  const double lam = (n - 2) / 2.0;
  double c0 = 1.0, c1 = 2.0 * lam * u;
  for (int j = 2; j <= k; ++j) {
    const double c2 = (2.0 * u * (j + lam - 1.0) * c1 - (j + 2.0 * lam - 2.0) * c0) / j;
    c0 = c1;
    c1 = c2;
  }
  return (2.0 * k + n - 2.0) / (n - 2.0) * c1;
}

double poisson_ball(const Eigen::VectorXd& x, const Eigen::VectorXd& yp) {
  if (x.size() != yp.size()) throw std::invalid_argument("poisson_ball: dimension mismatch");
  const double r2 = x.squaredNorm();
  if (r2 >= 1.0) throw std::invalid_argument("poisson_ball: x must lie inside the ball");
  const double d = (x - yp).norm();
  return (1.0 - r2) / std::pow(d, static_cast<double>(x.size()));
}

SphericalExpansion SphericalExpansion::zero(int n, int K) {
  require_basis_dim(n);
  if (K < 0) throw std::invalid_argument("SphericalExpansion: negative degree cap");
  SphericalExpansion f;
  f.n = n;
  for (int k = 0; k <= K; ++k) f.coeffs.push_back(Eigen::VectorXcd::Zero(harmonic_dim(n, k)));
  return f;
}

SphericalExpansion SphericalExpansion::constant(int n, int K, Complex value) {
  SphericalExpansion f = zero(n, K);
  f.coeffs[0](0) = value;
  return f;
}

SphericalExpansion SphericalExpansion::poisson(int n, int K, const Eigen::VectorXd& xp) {
  SphericalExpansion f = zero(n, K);
  const auto bases = all_bases(n, K, xp, false);
  for (int k = 0; k <= K; ++k)
    f.coeffs[static_cast<std::size_t>(k)] = bases[static_cast<std::size_t>(k)].row(0).transpose().cast<Complex>();
  return f;
}

SphericalExpansion SphericalExpansion::random(int n, int K, std::uint64_t seed, double decay) {
  SphericalExpansion f = zero(n, K);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
  double scale = 1.0;
  for (int k = 0; k <= K; ++k, scale *= decay)
    for (auto& c : f.coeffs[static_cast<std::size_t>(k)]) {
      const double re = normal(rng);
      const double im = normal(rng);
      c = Complex(re, im) * scale;
    }
  return f;
}

Complex SphericalExpansion::operator()(const Eigen::VectorXd& x) const {
  const double r = x.norm();
  if (r == 0.0) return coeffs.empty() ? Complex(0.0) : coeffs[0](0);
  const auto bases = all_bases(n, degree(), x / r, false);
  Complex acc = 0.0;
  double rk = 1.0;
  for (int k = 0; k <= degree(); ++k, rk *= r)
    acc += rk * (bases[static_cast<std::size_t>(k)].row(0).transpose().cast<Complex>().cwiseProduct(
                     coeffs[static_cast<std::size_t>(k)]))
                    .sum();
  return acc;
}

double SphericalExpansion::gradient_norm(const Eigen::VectorXd& x) const {
  const double r = x.norm();
  const Eigen::VectorXd xp = r == 0.0 ? unit_e1(n) : Eigen::VectorXd(x / r);
  const auto bases = all_bases(n, degree(), xp, true);
  std::vector<Complex> comp(static_cast<std::size_t>(n), Complex(0.0));
  for (int k = 1; k <= degree(); ++k) {
    const double rk1 = std::pow(r, k - 1);
    const Eigen::MatrixXd& B = bases[static_cast<std::size_t>(k)];
    const Eigen::VectorXcd& b = coeffs[static_cast<std::size_t>(k)];
    comp[0] += double(k) * rk1 * (B.row(0).transpose().cast<Complex>().cwiseProduct(b)).sum();
    for (int d = 1; d < n; ++d)
      comp[static_cast<std::size_t>(d)] += rk1 * (B.row(d).transpose().cast<Complex>().cwiseProduct(b)).sum();
  }
  double sq = 0.0;
  for (const Complex& c : comp) sq += std::norm(c);
  return std::sqrt(sq);
}

double SphericalExpansion::parseval(double r) const {
  double acc = 0.0, r2k = 1.0;
  for (const auto& c : coeffs) {
    acc += r2k * c.squaredNorm();
    r2k *= r * r;
  }
  return acc;
}

SphericalExpansion SphericalExpansion::truncated(int K) const {
  if (K < 0) throw std::invalid_argument("truncated: negative degree cap");
  SphericalExpansion f = zero(n, K);
  for (int k = 0; k <= std::min(K, degree()); ++k) f.coeffs[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(k)];
  return f;
}

SphericalExpansion convolve(const SphericalExpansion& f, const SphericalExpansion& g) {
  require_same_n(f, g);
  SphericalExpansion h = SphericalExpansion::zero(f.n, std::min(f.degree(), g.degree()));
  for (int k = 0; k <= h.degree(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    h.coeffs[i] = f.coeffs[i].cwiseProduct(g.coeffs[i]);
  }
  return h;
}

SphericalExpansion apply_multiplier(const MultiplierSequence& c, const SphericalExpansion& f) {
  require_same_n(c, f);
  if (c.degree() < f.degree()) throw std::invalid_argument("apply_multiplier: multiplier shorter than expansion");
  return convolve(c.truncated(f.degree()), f);
}

double fractional_multiplier(int n, int k, double t) {
  if (is_nonpositive_integer(t)) {
    if (t == 0.0) return 0.0;
    throw std::invalid_argument("fractional_multiplier: order must not be a negative integer");
  }
  const double a = k + n / 2.0;
  const double x = a + t;
  if (is_nonpositive_integer(x)) throw std::invalid_argument("fractional_multiplier: Gamma pole in the numerator");
  return gamma_sign(x) * gamma_sign(t) * std::exp(std::lgamma(x) - std::lgamma(a) - std::lgamma(t));
}

SphericalExpansion fractional_derivative(double t, const SphericalExpansion& f) {
  SphericalExpansion h = f;
  for (int k = 0; k <= f.degree(); ++k) h.coeffs[static_cast<std::size_t>(k)] *= fractional_multiplier(f.n, k, t);
  return h;
}

MultiplierSequence diagonal_multiplier(int n, std::span<const Complex> values) {
  if (values.empty()) throw std::invalid_argument("diagonal_multiplier: empty sequence");
  SphericalExpansion c = SphericalExpansion::zero(n, static_cast<int>(values.size()) - 1);
  for (std::size_t k = 0; k < values.size(); ++k) c.coeffs[k].setConstant(values[k]);
  return c;
}

SeriesValue g_conv_poisson_slice(const MultiplierSequence& g, const Eigen::VectorXd& xp, double rho,
                                 const Eigen::VectorXd& yp) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("g_conv_poisson_slice: need 0 <= rho < 1");
  const auto bx = all_bases(g.n, g.degree(), xp, false);
  const auto by = all_bases(g.n, g.degree(), yp, false);
  SeriesValue out{Complex(0.0), 0.0};
  double rk = 1.0, cmax = 0.0;
  for (int k = 0; k <= g.degree(); ++k, rk *= rho) {
    const auto i = static_cast<std::size_t>(k);
    const Eigen::VectorXd prod = bx[i].row(0).cwiseProduct(by[i].row(0)).transpose();
    out.value += rk * (prod.cast<Complex>().cwiseProduct(g.coeffs[i])).sum();
    cmax = std::max(cmax, g.coeffs[i].cwiseAbs().maxCoeff());
  }
  // sum_{k > K} rho^k d_k, with d_k = Z_k(1) bounding |sum_j Y_j(x') Y_j(y')|.
  double tail = 0.0;
  for (int k = g.degree() + 1; rk > 0.0; ++k, rk *= rho) {
    const double term = rk * harmonic_dim(g.n, k);
    tail += term;
    if (term < 1e-18 * std::max(tail, 1e-300) || k > g.degree() + 1000000) break;
  }
  out.tail_bound = cmax * tail;
  return out;
}

SphereGrid make_sphere_grid(int n, int resolution) {
  require_basis_dim(n);
  if (resolution < 1) throw std::invalid_argument("make_sphere_grid: resolution must be positive");
  SphereGrid G;
  G.n = n;
  if (n == 2) {
    for (int i = 0; i < resolution; ++i) {
      const double th = 2.0 * std::numbers::pi * i / resolution;
      Eigen::VectorXd p(2);
      p << std::cos(th), std::sin(th);
      G.points.push_back(p);
      G.weights.push_back(1.0 / resolution);
    }
    return G;
  }
  const GaussLegendre& gl = gauss_legendre(resolution);
  const int nphi = 2 * resolution;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double c = gl.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < nphi; ++j) {
      const double ph = 2.0 * std::numbers::pi * j / nphi;
      Eigen::VectorXd p(3);
      p << s * std::cos(ph), s * std::sin(ph), c;
      G.points.push_back(p);
      G.weights.push_back(gl.weights[i] / (2.0 * nphi));
    }
  }
  return G;
}

int exact_resolution(int n, int K) {
  require_basis_dim(n);
  return n == 2 ? 2 * K + 1 : K + 1;
}

int default_resolution(int n, int K) {
  require_basis_dim(n);
  return n == 2 ? std::max(4 * (K + 1), 64) : std::max(2 * (K + 1), 24);
}

RadialRule make_radial_rule(int levels, int order) {
  if (levels < 1 || order < 1) throw std::invalid_argument("make_radial_rule: need levels, order >= 1");
  const std::vector<double> breaks = endpoint_graded_breaks(levels);
  const AxisRule axis = panel_rule(breaks, order);
  return RadialRule{axis.nodes, axis.weights, 1.0 - breaks.back()};
}

double slice_norm(const SphericalExpansion& f, double p, double r, const BallSpec& spec) {
  if (!(p > 0.0)) throw std::invalid_argument("slice_norm: p must be positive");
  if (r < 0.0 || r > 1.0) throw std::invalid_argument("slice_norm: r must lie in [0, 1]");
  const GridBasis G = make_grid_basis(f.n, f.degree(), resolve_resolution(f.n, f.degree(), spec.sphere_resolution), false);
  return grid_mean_power(G.grid, grid_abs(G, f, r), p);
}

double hardy_norm(const SphericalExpansion& f, double s, const BallSpec& spec) {
  if (!(s > 0.0)) throw std::invalid_argument("hardy_norm: s must be positive");
  const RadialProfile P = radial_profile(f, s, false, spec);
  double best = slice_norm(f, s, 1.0, spec);
  for (double m : P.m) best = std::max(best, m);
  return best;
}

double bergman_norm(const SphericalExpansion& f, double p, double alpha, const BallSpec& spec) {
  if (!(p > 0.0) || std::isinf(p)) throw std::invalid_argument("bergman_norm: need 0 < p < infinity");
  if (!(alpha > -1.0)) throw std::invalid_argument("bergman_norm: need alpha > -1");
  const RadialProfile P = radial_profile(f, p, false, spec);
  return std::pow(weighted_radial_integral(P, f.n, p, alpha), 1.0 / p);
}

double sup_norm(const SphericalExpansion& f, double alpha, const BallSpec& spec) {
  if (!(alpha > 0.0)) throw std::invalid_argument("sup_norm: need alpha > 0");
  const RadialProfile P = radial_profile(f, kInf, false, spec);
  double best = 0.0;
  for (std::size_t i = 0; i < P.m.size(); ++i) {
    const double r = P.rule.nodes[i];
    best = std::max(best, std::pow(1.0 - r * r, alpha) * P.m[i]);
  }
  return best;
}

namespace {

double mixed_from_profile(const RadialProfile& P, int n, double p, double alpha) {
  if (std::isinf(p)) {
    double best = 0.0;
    for (std::size_t i = 0; i < P.m.size(); ++i) {
      const double r = P.rule.nodes[i];
      best = std::max(best, std::pow(1.0 - r * r, alpha) * P.m[i]);
    }
    return best;
  }
  return std::pow(weighted_radial_integral(P, n, p, alpha * p - 1.0), 1.0 / p);
}

void check_mixed(double p, double q, double alpha) {
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("mixed_norm: exponents must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("mixed_norm: need alpha > 0");
}

}  // namespace

double mixed_norm(const SphericalExpansion& f, double p, double q, double alpha, const BallSpec& spec) {
  check_mixed(p, q, alpha);
  return mixed_from_profile(radial_profile(f, q, false, spec), f.n, p, alpha);
}

double da_norm(const SphericalExpansion& f, double p, double alpha, const BallSpec& spec) {
  if (!(p > 0.0) || std::isinf(p)) throw std::invalid_argument("da_norm: need 0 < p < infinity");
  if (!(alpha > -1.0)) throw std::invalid_argument("da_norm: need alpha > -1");
  const RadialProfile P = radial_profile(f, p, true, spec);
  return std::abs(f.coeffs[0](0)) + std::pow(weighted_radial_integral(P, f.n, p, alpha), 1.0 / p);
}

double db_norm(const SphericalExpansion& f, double p, double q, double alpha, const BallSpec& spec) {
  check_mixed(p, q, alpha);
  return std::abs(f.coeffs[0](0)) + mixed_from_profile(radial_profile(f, q, true, spec), f.n, p, alpha);
}

FunctionalReport multiplier_functional(const MultiplierSequence& g, const FunctionalSpec& spec) {
  if (!(spec.s >= 1.0)) throw std::invalid_argument("multiplier_functional: need s >= 1");
  if (spec.rho_levels < 1) throw std::invalid_argument("multiplier_functional: need rho_levels >= 1");
  FunctionalReport R;
  R.rho = rho_grid(spec.rho_levels);
  const int K = g.degree();
  const GridBasis G = make_grid_basis(
      g.n, K, spec.sphere_resolution > 0 ? spec.sphere_resolution : exact_resolution(g.n, K), false);
  const bool zonal = is_diagonal(g);
  std::vector<double> lam(static_cast<std::size_t>(K + 1), 1.0);
  if (spec.lambda_order != 0.0)
    for (int k = 0; k <= K; ++k) lam[static_cast<std::size_t>(k)] = fractional_multiplier(g.n, k, spec.lambda_order);
  R.per_rho.assign(R.rho.size(), 0.0);
  parallel_map(R.per_rho, [&](std::size_t i) {
    const double rho = R.rho[i];
    std::vector<Complex> scale(static_cast<std::size_t>(K + 1));
    for (int k = 0; k <= K; ++k) scale[static_cast<std::size_t>(k)] = std::pow(rho, k) * lam[static_cast<std::size_t>(k)];
    return std::pow(1.0 - rho, spec.weight_exponent) * kernel_slice_sup(g, G, scale, spec.s, zonal);
  });
  for (std::size_t i = 0; i < R.per_rho.size(); ++i)
    if (R.per_rho[i] > R.value) {
      R.value = R.per_rho[i];
      R.argmax_rho = R.rho[i];
    }
  R.trend_slope = trend_slope(R.rho, R.per_rho);
  R.likely_infinite = R.trend_slope > 0.05;
  return R;
}

FunctionalReport functional_N(const MultiplierSequence& g, double s_conj, double beta, int rho_levels) {
  return multiplier_functional(g, {.weight_exponent = beta, .s = s_conj, .lambda_order = 0.0, .rho_levels = rho_levels});
}

FunctionalReport functional_M(const MultiplierSequence& g, double q_conj, int m, double alpha, double beta,
                              int rho_levels) {
  return multiplier_functional(
      g, {.weight_exponent = m + 1 + beta - alpha, .s = q_conj, .lambda_order = m + 1.0, .rho_levels = rho_levels});
}

FunctionalReport functional_L(const MultiplierSequence& g, double s_conj, int m, double alpha, double beta,
                              int rho_levels) {
  return multiplier_functional(
      g, {.weight_exponent = m + 2 + beta - alpha, .s = s_conj, .lambda_order = m + 1.0, .rho_levels = rho_levels});
}

FunctionalReport functional_K(const MultiplierSequence& g, double s_conj, int m, double alpha, double beta,
                              int rho_levels) {
  return multiplier_functional(
      g, {.weight_exponent = m + 1 + beta - alpha, .s = s_conj, .lambda_order = m + 1.0, .rho_levels = rho_levels});
}

InequalityReport multiplier_inequality_check(const MultiplierSequence& c, std::span<const SphericalExpansion> panel,
                                             const InequalityParams& params) {
  InequalityReport R;
  const double sc = conjugate(params.s);
  const bool hardy = params.target == MultiplierTarget::hardy;
  if (!hardy && !(params.m > std::max(params.alpha - params.beta - 1.0, params.beta - 1.0)))
    throw std::invalid_argument("multiplier_inequality_check: need m > max(alpha - beta - 1, beta - 1)");
  const FunctionalReport F = hardy ? functional_N(c, sc, params.beta, params.rho_levels)
                                   : functional_M(c, sc, params.m, params.alpha, params.beta, params.rho_levels);
  R.functional = F.value;
  const int K = c.degree();
  const GridBasis G = make_grid_basis(c.n, K, exact_resolution(c.n, K), false);
  const std::vector<double> rho = rho_grid(params.rho_levels);
  for (const SphericalExpansion& f : panel) {
    require_same_n(c, f);
    const SphericalExpansion fk = f.truncated(K);
    SphericalExpansion h = apply_multiplier(c, fk);
    if (!hardy) h = fractional_derivative(params.m + 1.0, h);
    std::vector<double> row(rho.size(), 0.0);
    for (std::size_t i = 0; i < rho.size(); ++i) {
      const double r = rho[i];
      const double lhs_sup = grid_abs(G, h, r * r).maxCoeff();
      const double ms = grid_mean_power(G.grid, grid_abs(G, fk, r), params.s);
      const double lhs = hardy ? std::pow(1.0 - r, params.beta) * lhs_sup
                               : std::pow(1.0 - r, params.m + 1 + params.beta) * lhs_sup;
      const double rhs = hardy ? F.value * ms : std::pow(1.0 - r, params.alpha) * F.value * ms;
      row[i] = rhs > 0.0 ? lhs / rhs : 0.0;
      R.max_ratio = std::max(R.max_ratio, row[i]);
    }
    R.ratios.push_back(std::move(row));
  }
  return R;
}

}  // namespace hfs::ball
