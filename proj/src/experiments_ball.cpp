#include "experiment_support.hpp"

#include "hfs/ball.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace hfs::verify {

using detail::fmt;
using detail::tier;
using namespace hfs::ball;

namespace {

Eigen::VectorXd random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v.normalized();
}

double max_coeff_diff(const SphericalExpansion& a, const SphericalExpansion& b) {
  if (a.degree() != b.degree()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (int k = 0; k <= a.degree(); ++k) d = std::max(d, (a.coeffs[k] - b.coeffs[k]).cwiseAbs().maxCoeff());
  return d;
}

double max_coeff(const SphericalExpansion& a) {
  double d = 0.0;
  for (const auto& c : a.coeffs) d = std::max(d, c.cwiseAbs().maxCoeff());
  return d;
}

SphericalExpansion scaled(const SphericalExpansion& f, Complex s) {
  SphericalExpansion g = f;
  for (auto& c : g.coeffs) c *= s;
  return g;
}

// ---------------------------------------------------------------------------------------------
// Basis, zonal harmonics, expansions and norms

void basis_checks(const Json& p, const RunContext& ctx, ExperimentResult& r) {
  const int K = integer(p, "gram_K");
  std::mt19937_64 rng(ctx.seed);
  for (int n : {2, 3}) {
    const SphereGrid G = make_sphere_grid(n, exact_resolution(n, K));
    int D = 0;
    for (int k = 0; k <= K; ++k) D += harmonic_dim(n, k);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(D, D);
    for (std::size_t i = 0; i < G.size(); ++i) {
      Eigen::VectorXd v(D);
      int o = 0;
      for (int k = 0; k <= K; ++k) {
        const Eigen::VectorXd b = basis(n, k, G.points[i]);
        v.segment(o, b.size()) = b;
        o += static_cast<int>(b.size());
      }
      gram.noalias() += G.weights[i] * v * v.transpose();
    }
    const std::string tag = "n" + std::to_string(n);
    r.checks.push_back(check_le("gram." + tag, (gram - Eigen::MatrixXd::Identity(D, D)).cwiseAbs().maxCoeff(),
                                1e-8, "K = " + std::to_string(K)));

    double addition = 0.0;
    for (int trial = 0; trial < 16; ++trial) {
      const Eigen::VectorXd x = random_unit(n, rng), y = random_unit(n, rng);
      for (int k = 0; k <= K; ++k)
        addition = std::max(addition, std::abs(basis(n, k, x).dot(basis(n, k, y)) - zonal_harmonic(n, k, x.dot(y))));
    }
    r.checks.push_back(check_le("addition_theorem." + tag, addition, 1e-10));
  }

  // Z_k on the circle against the Fourier computation 2 cos(k gamma).
  double circle = std::abs(zonal_harmonic(2, 0, 0.3) - 1.0);
  for (int k = 1; k <= 12; ++k)
    for (double g : {0.0, 0.4, 1.7, 3.0})
      circle = std::max(circle, std::abs(zonal_harmonic(2, k, std::cos(g)) - 2.0 * std::cos(k * g)));
  r.checks.push_back(check_le("zonal.circle_fourier", circle, 1e-12));
  r.checks.push_back(check_le("zonal.k0", std::abs(zonal_harmonic(3, 0, 0.2) - 1.0), 1e-15));

  // Poisson partial sums: the tail beyond K is bounded by sum r^k Z_k(1), tiny at r = 0.5, K = 40.
  const double rr = num(p, "poisson_r");
  const int KP = integer(p, "poisson_K");
  io::CsvTable t{{"n", "cos_gamma", "partial_sum", "closed_form", "relative_error"}, {}};
  for (int n : {2, 3, 4}) {
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
      const Eigen::VectorXd x = random_unit(n, rng), y = random_unit(n, rng);
      double s = 0.0;
      for (int k = 0; k <= KP; ++k) s += std::pow(rr, k) * zonal_harmonic(n, k, x.dot(y));
      const double exact = poisson_ball(rr * x, y);
      const double rel = std::abs(s - exact) / exact;
      worst = std::max(worst, rel);
      t.add_row({std::to_string(n), fmt(x.dot(y)), fmt(s), fmt(exact), fmt(rel)});
    }
    r.checks.push_back(check_le("poisson_partial_sum.n" + std::to_string(n), worst, 1e-6,
                                "r = " + fmt(rr) + ", K = " + std::to_string(KP)));
  }
  r.artifacts.push_back({"poisson", std::move(t)});

  bool rejected = false;
  try {
    (void)basis(4, 1, Eigen::VectorXd::Unit(4, 0));
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  r.checks.push_back(check_true("basis.rejects_n4", rejected));
}

void expansion_checks(const Json& p, const RunContext& ctx, ExperimentResult& r) {
  const int K = integer(p, "algebra_K");
  std::mt19937_64 rng(ctx.seed + 1);
  double parseval = 0.0, gradient = 0.0, laplacian = 0.0;
  for (int n : {2, 3}) {
    const SphericalExpansion f = SphericalExpansion::random(n, K, ctx.seed + n, 0.9);
    const SphericalExpansion g = SphericalExpansion::random(n, K, ctx.seed + 10 + n, 0.9);
    const SphericalExpansion h = SphericalExpansion::random(n, K, ctx.seed + 20 + n, 0.9);
    const std::string tag = ".n" + std::to_string(n);

    r.checks.push_back(check_le("convolve.commutative" + tag, max_coeff_diff(convolve(f, g), convolve(g, f)), 0.0));
    r.checks.push_back(check_le("convolve.associative" + tag,
                                max_coeff_diff(convolve(convolve(f, g), h), convolve(f, convolve(g, h))), 1e-14));
    r.checks.push_back(check_le("convolve.zero" + tag, max_coeff(convolve(f, SphericalExpansion::zero(n, K))), 0.0));
    r.checks.push_back(check_le("multiplier.zero" + tag,
                                max_coeff(apply_multiplier(SphericalExpansion::zero(n, K), f)), 0.0));
    std::vector<Complex> ones(K + 1, 1.0);
    r.checks.push_back(check_le("multiplier.ones" + tag, max_coeff_diff(apply_multiplier(diagonal_multiplier(n, ones), f), f),
                                0.0, "c = 1 is the identity"));

    // Lambda_t commutes with c* and is linear.
    std::vector<Complex> cv(K + 1);
    std::normal_distribution<double> nd;
    for (auto& c : cv) c = Complex(nd(rng), nd(rng));
    const MultiplierSequence c = diagonal_multiplier(n, cv);
    const double t = 1.5;
    r.checks.push_back(check_le("lambda.commutes_with_multiplier" + tag,
                                max_coeff_diff(fractional_derivative(t, apply_multiplier(c, f)),
                                               apply_multiplier(c, fractional_derivative(t, f))),
                                1e-12 * max_coeff(fractional_derivative(t, apply_multiplier(c, f)))));
    SphericalExpansion sum = f;
    for (int k = 0; k <= K; ++k) sum.coeffs[k] += 2.0 * g.coeffs[k];
    SphericalExpansion lin = fractional_derivative(t, f);
    const SphericalExpansion lg = fractional_derivative(t, g);
    for (int k = 0; k <= K; ++k) lin.coeffs[k] += 2.0 * lg.coeffs[k];
    r.checks.push_back(check_le("lambda.linear" + tag, max_coeff_diff(fractional_derivative(t, sum), lin),
                                1e-12 * max_coeff(lin)));

    // Diagonal c: c*f evaluated pointwise equals g_c * f (coefficient identity).
    const Eigen::VectorXd x = 0.6 * random_unit(n, rng);
    r.checks.push_back(check_le("multiplier.diagonal_is_convolution" + tag,
                                std::abs(apply_multiplier(c, f)(x) - convolve(c, f)(x)), 1e-13));

    // Parseval on sphere quadrature.
    for (double rad : {0.3, 0.7, 0.95}) {
      const double m2 = slice_norm(f, 2.0, rad, {.sphere_resolution = exact_resolution(n, K)});
      parseval = std::max(parseval, std::abs(m2 * m2 - f.parseval(rad)) / f.parseval(rad));
    }

    // Exact gradient against central differences; discrete Laplacian of the evaluated expansion.
    for (int trial = 0; trial < 6; ++trial) {
      const Eigen::VectorXd z = 0.7 * random_unit(n, rng) * (0.3 + 0.1 * trial);
      const double hd = 1e-6, hl = 1e-3;
      double g2 = 0.0, scale = 0.0;
      Complex lap = 0.0;
      for (int d = 0; d < n; ++d) {
        const Eigen::VectorXd e = Eigen::VectorXd::Unit(n, d);
        g2 += std::norm((f(z + hd * e) - f(z - hd * e)) / (2.0 * hd));
        const Complex second = (f(z + hl * e) + f(z - hl * e) - 2.0 * f(z)) / (hl * hl);
        lap += second;
        scale += std::abs(second);
      }
      gradient = std::max(gradient, std::abs(f.gradient_norm(z) - std::sqrt(g2)) / std::sqrt(g2));
      laplacian = std::max(laplacian, std::abs(lap) / std::max(scale, 1.0));
    }
  }
  r.checks.push_back(check_le("parseval", parseval, 1e-8, "relative, r in {0.3, 0.7, 0.95}"));
  r.checks.push_back(check_le("gradient.vs_central_difference", gradient, 1e-6));
  r.checks.push_back(check_le("harmonicity.discrete_laplacian", laplacian, 1e-4,
                              "relative to the sum of |second differences|"));

  // Fractional multipliers by Gamma arithmetic.
  r.checks.push_back(check_near("lambda.n2_t1_k0", fractional_multiplier(2, 0, 1.0), 1.0, 1e-13));
  r.checks.push_back(check_near("lambda.n2_t1_k2", fractional_multiplier(2, 2, 1.0), 3.0, 1e-13));
  bool rejected = false;
  try {
    (void)fractional_derivative(-1.0, SphericalExpansion::constant(2, 2, 1.0));
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  r.checks.push_back(check_true("lambda.rejects_negative_integer", rejected));
}

// (c*f)(rho^2 x') = integral_S (g_c * P_{y'})(rho x') f(rho y') dy' = integral_S (g_c * P_{x'})(rho y') f(rho y') dy'.
void reproducing_checks(const Json& p, const RunContext& ctx, ExperimentResult& r) {
  const int n = 2, K = integer(p, "reproducing_K");
  std::mt19937_64 rng(ctx.seed + 2);
  std::normal_distribution<double> nd;
  const SphericalExpansion f = SphericalExpansion::random(n, K, ctx.seed + 30, 0.9);
  std::vector<Complex> cv(K + 1);
  for (auto& c : cv) c = Complex(nd(rng), nd(rng));
  const MultiplierSequence c = diagonal_multiplier(n, cv);
  const SphericalExpansion h = apply_multiplier(c, f);
  const SphereGrid G = make_sphere_grid(n, integer(p, "reproducing_resolution"));
  double worst = 0.0, zonal = 0.0, poisson = 0.0;
  io::CsvTable t{{"rho", "x_angle", "lhs", "rhs", "error"}, {}};
  for (double rho : {0.3, 0.6, 0.8, 0.95}) {
    for (int trial = 0; trial < 4; ++trial) {
      const Eigen::VectorXd x = random_unit(n, rng);
      Complex first = 0.0, second = 0.0;
      for (std::size_t i = 0; i < G.size(); ++i) {
        const Complex fy = f(rho * G.points[i]);
        first += G.weights[i] * g_conv_poisson_slice(c, G.points[i], rho, x).value * fy;
        second += G.weights[i] * g_conv_poisson_slice(c, x, rho, G.points[i]).value * fy;
      }
      const Complex lhs = h(rho * rho * x);
      const double err = std::max(std::abs(first - lhs), std::abs(second - lhs)) / std::max(std::abs(lhs), 1.0);
      worst = std::max(worst, err);
      t.add_row({fmt(rho), fmt(std::atan2(x(1), x(0))), fmt(std::abs(lhs)), fmt(std::abs(second)), fmt(err)});

      // Diagonal c: the slice is the zonal series sum rho^k c_k Z_k(x'.y').
      const Eigen::VectorXd y = random_unit(n, rng);
      Complex series = 0.0;
      for (int k = 0; k <= K; ++k) series += std::pow(rho, k) * cv[k] * zonal_harmonic(n, k, x.dot(y));
      zonal = std::max(zonal, std::abs(series - g_conv_poisson_slice(c, x, rho, y).value) / std::max(std::abs(series), 1.0));
    }
  }
  // c = 1: the slice is the Poisson kernel up to the reported tail bound.
  for (double rho : {0.3, 0.6}) {
    const int KK = 80;
    std::vector<Complex> ones(KK + 1, 1.0);
    const MultiplierSequence one = diagonal_multiplier(n, ones);
    const Eigen::VectorXd x = random_unit(n, rng), y = random_unit(n, rng);
    const SeriesValue v = g_conv_poisson_slice(one, x, rho, y);
    poisson = std::max(poisson, std::abs(v.value - poisson_ball(rho * y, x)) - v.tail_bound);
  }
  r.checks.push_back(check_le("reproducing_identity", worst, 1e-4, "n = 2, K = " + std::to_string(K)));
  r.checks.push_back(check_le("slice.diagonal_zonal_series", zonal, 1e-12));
  r.checks.push_back(check_le("slice.poisson_within_tail", poisson, 1e-12, "excess over the reported tail bound"));
  const Eigen::VectorXd x = random_unit(n, rng), y = random_unit(n, rng);
  r.checks.push_back(check_le("slice.rho0", std::abs(g_conv_poisson_slice(c, x, 0.0, y).value - cv[0]), 1e-15));
  r.artifacts.push_back({"reproducing", std::move(t)});
}

void norm_checks(const Json& p, const RunContext& ctx, ExperimentResult& r) {
  const int K = integer(p, "norm_K");
  io::CsvTable t{{"n", "alpha", "da", "db", "ratio"}, {}};
  double worst = 0.0;
  // The two sides use different quadrature budgets so the ratio is a numerical comparison.
  const BallSpec coarse{}, fine{.sphere_resolution = 0, .radial_levels = 48, .radial_order = 12};
  for (int n : {2, 3}) {
    const SphericalExpansion f = SphericalExpansion::random(n, K, ctx.seed + 40 + n, 0.8);
    for (double alpha : numbers(p, "da_alpha")) {
      const double da = da_norm(f, 1.0, alpha, coarse);
      const double db = db_norm(f, 1.0, 1.0, alpha + 1.0, fine);
      worst = std::max(worst, std::abs(da / db - 1.0));
      t.add_row({std::to_string(n), fmt(alpha), fmt(da), fmt(db), fmt(da / db)});
    }
  }
  r.checks.push_back(check_le("da_equals_db.ratio_error", worst, 1e-3, "DA^1_alpha vs DB^{1,1}_{alpha+1}"));
  r.artifacts.push_back({"da_db", std::move(t)});

  // Constant function: Hardy norm 1; mixed norm from the Beta integral
  // integral_0^1 (1 - r^2)^{ap - 1} r^{n-1} dr = B(n/2, ap) / 2.
  double constant = 0.0;
  for (int n : {2, 3}) {
    const SphericalExpansion one = SphericalExpansion::constant(n, 3, 1.0);
    constant = std::max(constant, std::abs(hardy_norm(one, 2.0) - 1.0));
    for (double a : {0.3, 0.7, 1.5})
      for (double pp : {1.0, 2.0, 3.0}) {
        const double beta = std::exp(std::lgamma(n / 2.0) + std::lgamma(a * pp) - std::lgamma(n / 2.0 + a * pp));
        const double exact = std::pow(0.5 * beta, 1.0 / pp);
        constant = std::max(constant, std::abs(mixed_norm(one, pp, 2.0, a) - exact) / exact);
      }
  }
  r.checks.push_back(check_le("constant.closed_forms", constant, 1e-6, "Hardy norm 1 and the Beta-integral mixed norm"));

  // Homogeneity of every norm.
  const SphericalExpansion f = SphericalExpansion::random(2, K, ctx.seed + 50, 0.8);
  const SphericalExpansion f3 = scaled(f, 3.0);
  double homog = 0.0;
  auto rel = [&](double a, double b) { homog = std::max(homog, std::abs(a - 3.0 * b) / (3.0 * b)); };
  rel(hardy_norm(f3, 2.0), hardy_norm(f, 2.0));
  rel(bergman_norm(f3, 2.0, 0.5), bergman_norm(f, 2.0, 0.5));
  rel(sup_norm(f3, 1.0), sup_norm(f, 1.0));
  rel(mixed_norm(f3, 2.0, 3.0, 0.5), mixed_norm(f, 2.0, 3.0, 0.5));
  rel(da_norm(f3, 2.0, 0.5), da_norm(f, 2.0, 0.5));
  rel(db_norm(f3, 2.0, 2.0, 1.0), db_norm(f, 2.0, 2.0, 1.0));
  r.checks.push_back(check_le("homogeneity", homog, 1e-12));

  bool rejected = false;
  try {
    (void)bergman_norm(f, 2.0, -1.5);
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  r.checks.push_back(check_true("bergman.rejects_alpha", rejected));
}

void run_ball(const Json& p, const RunContext& ctx, ExperimentResult& r) {
  basis_checks(p, ctx, r);
  expansion_checks(p, ctx, r);
  reproducing_checks(p, ctx, r);
  norm_checks(p, ctx, r);
}

// ---------------------------------------------------------------------------------------------
// Multiplier theorems: sufficiency tables and functional finiteness

// Diagonal multiplier whose first K+1 values do not depend on K.
MultiplierSequence random_diagonal(int n, int K, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<Complex> v(K + 1);
  for (int k = 0; k <= K; ++k) v[k] = Complex(1.0 + u(rng), u(rng)) / (k + 1.0);
  return diagonal_multiplier(n, v);
}

void record_table(ExperimentResult& r, const std::string& name, const InequalityReport& rep, int rho_levels) {
  std::vector<std::string> cols{"f"};
  for (int i = 0; i <= rho_levels; ++i) cols.push_back("r_" + std::to_string(i));
  io::CsvTable t{cols, {}};
  for (std::size_t f = 0; f < rep.ratios.size(); ++f) {
    std::vector<std::string> row{std::to_string(f)};
    for (double v : rep.ratios[f]) row.push_back(fmt(v));
    t.add_row(row);
  }
  r.artifacts.push_back({name, std::move(t)});
}

// Max ratio over r > 0; r = 0 reduces to |c_0| / N and pins the overall max at 1 for many c.
double interior_max(const InequalityReport& rep) {
  double m = 0.0;
  for (const auto& row : rep.ratios)
    for (std::size_t i = 1; i < row.size(); ++i) m = std::max(m, row[i]);
  return m;
}

bool all_finite(const InequalityReport& rep) {
  for (const auto& row : rep.ratios)
    for (double v : row)
      if (!std::isfinite(v)) return false;
  return std::isfinite(rep.functional);
}

void run_thm8_9(const Json& p, const RunContext& ctx, ExperimentResult& r) {
  const int n = integer(p, "n"), K = integer(p, "K"), panel_size = integer(p, "panel");
  const int levels = integer(p, "rho_levels");
  const double stability = num(p, "stability");
  InequalityParams hardy{.target = MultiplierTarget::hardy,
                         .s = num(p, "s"),
                         .beta = num(p, "beta"),
                         .rho_levels = levels};
  InequalityParams mixed{.target = MultiplierTarget::mixed,
                         .s = num(p, "q"),
                         .beta = num(p, "beta"),
                         .alpha = num(p, "alpha"),
                         .m = integer(p, "m"),
                         .rho_levels = levels};

  std::vector<SphericalExpansion> panel;
  for (int i = 0; i < panel_size; ++i)
    panel.push_back(SphericalExpansion::random(n, 2 * K, ctx.seed + 100 + i, num(p, "decay")));

  // c = 0: every ratio is defined as 0 and the functionals vanish.
  {
    const auto zero = SphericalExpansion::zero(n, K);
    const InequalityReport a = multiplier_inequality_check(zero, panel, hardy);
    const InequalityReport b = multiplier_inequality_check(zero, panel, mixed);
    r.checks.push_back(check_le("zero.max_ratio", std::max(a.max_ratio, b.max_ratio), 0.0));
    r.checks.push_back(check_le("zero.functionals",
                                functional_N(zero, 2.0, 1.0).value + functional_M(zero, 2.0, 1, 1.0, 1.0).value +
                                    functional_L(zero, 2.0, 1, 1.0, 1.0).value + functional_K(zero, 2.0, 1, 1.0, 1.0).value,
                                0.0));
  }

  // c = 1 at n = 2, s' = 2: the slice is the truncated Poisson kernel with
  // ||P||_2^2 = 1 + 2 sum_{k<=K} rho^{2k}, so N = sup_rho (1 - rho)^beta (1 + 2 sum rho^{2k})^{1/2}.
  {
    std::vector<Complex> ones(K + 1, 1.0);
    const auto one = diagonal_multiplier(n, ones);
    const FunctionalReport N = functional_N(one, 2.0, hardy.beta, levels);
    double err = 0.0;
    for (std::size_t i = 0; i < N.rho.size(); ++i) {
      const double rho = N.rho[i];
      double s = 1.0;
      for (int k = 1; k <= K; ++k) s += (n == 2 ? 2.0 : 2.0 * k + 1.0) * std::pow(rho, 2 * k);
      const double exact = std::pow(1.0 - rho, hardy.beta) * std::sqrt(s);
      err = std::max(err, std::abs(N.per_rho[i] - exact) / exact);
    }
    r.checks.push_back(check_le("identity.N_closed_form", err, 1e-10));
    const InequalityReport rep = multiplier_inequality_check(one, panel, hardy);
    r.checks.push_back(check_true("identity.ratios_finite", all_finite(rep)));
    r.checks.push_back(check_le("identity.max_ratio", rep.max_ratio, 1.0 + 1e-9, "discrete Hölder bound"));
    r.fitted_constants["identity.hardy_C"] = rep.max_ratio;
  }

  // Random diagonal c: sufficiency tables at K and 2K.
  io::CsvTable summary{{"theorem", "K", "functional", "max_ratio", "max_ratio_interior"}, {}};
  for (const auto& [label, params] : {std::pair{std::string("thm8"), hardy}, std::pair{std::string("thm9"), mixed}}) {
    std::vector<double> constants, interior;
    for (int k : {K, 2 * K}) {
      const auto c = random_diagonal(n, k, ctx.seed + 7);
      const InequalityReport rep = multiplier_inequality_check(c, panel, params);
      const std::string tag = label + ".K" + std::to_string(k);
      r.checks.push_back(check_true(tag + ".finite", all_finite(rep)));
      r.checks.push_back(check_le(tag + ".max_ratio", rep.max_ratio, 1.0 + 1e-9, "discrete Hölder bound"));
      r.fitted_constants[tag + ".C"] = rep.max_ratio;
      r.fitted_constants[tag + ".functional"] = rep.functional;
      r.fitted_constants[tag + ".C_interior"] = interior_max(rep);
      constants.push_back(rep.max_ratio);
      interior.push_back(interior_max(rep));
      summary.add_row({label, std::to_string(k), fmt(rep.functional), fmt(rep.max_ratio), fmt(interior.back())});
      record_table(r, tag, rep, levels);
    }
    r.checks.push_back(check_le(label + ".K_stability", std::abs(constants[1] - constants[0]) / constants[0], stability,
                                "fitted constant, K vs 2K"));
    r.checks.push_back(check_le(label + ".K_stability_interior", std::abs(interior[1] - interior[0]) / interior[0],
                                stability, "max over r > 0, K vs 2K"));
  }
  r.artifacts.push_back({"summary", std::move(summary)});

  // Functional finiteness: finite-degree g keeps every functional bounded on the rho grid.
  {
    const auto c = random_diagonal(n, K, ctx.seed + 7);
    const int m = mixed.m;
    const double a = mixed.alpha, b = mixed.beta;
    const std::vector<std::pair<std::string, FunctionalReport>> reps{
        {"N", functional_N(c, 2.0, b, levels)},
        {"M", functional_M(c, 2.0, m, a, b, levels)},
        {"L", functional_L(c, 2.0, m, a, b, levels)},
        {"K", functional_K(c, 2.0, m, a, b, levels)}};
    io::CsvTable trace{{"functional", "rho", "value"}, {}};
    for (const auto& [name, rep] : reps) {
      r.checks.push_back(check_true("finite_degree." + name + ".bounded", std::isfinite(rep.value) && !rep.likely_infinite,
                                    "trend slope " + fmt(rep.trend_slope)));
      r.fitted_constants["functional." + name] = rep.value;
      for (std::size_t i = 0; i < rep.rho.size(); ++i) trace.add_row({name, fmt(rep.rho[i]), fmt(rep.per_rho[i])});
    }
    r.artifacts.push_back({"functionals", std::move(trace)});

    // Constant g: N = |c_0| sup (1 - rho)^beta = |c_0| at rho = 0.
    const Complex c0(0.75, -0.4);
    const FunctionalReport Nc = functional_N(SphericalExpansion::constant(n, K, c0), 2.0, b, levels);
    r.checks.push_back(check_near("constant.N", Nc.value, std::abs(c0), 1e-12));
    r.checks.push_back(check_le("constant.argmax_rho", Nc.argmax_rho, 0.0));

    // m below the threshold m > alpha - beta - 1: the weight exponent m + 1 + beta - alpha is
    // negative and the functional grows like (1 - rho)^{m + 1 + beta - alpha} even for a constant g.
    const double a_big = b + m + 1.5;
    const FunctionalReport Mdiv = functional_M(SphericalExpansion::constant(n, K, 1.0), 2.0, m, a_big, b, levels);
    r.checks.push_back(check_true("below_threshold.likely_infinite", Mdiv.likely_infinite,
                                  "trend slope " + fmt(Mdiv.trend_slope)));
    r.checks.push_back(check_near("below_threshold.trend_slope", Mdiv.trend_slope, a_big - m - 1 - b, 0.05));
    bool rejected = false;
    try {
      InequalityParams bad = mixed;
      bad.alpha = a_big;
      (void)multiplier_inequality_check(c, panel, bad);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    r.checks.push_back(check_true("below_threshold.check_rejected", rejected));
  }
}

}  // namespace

std::vector<Experiment> ball_experiments() {
  std::vector<Experiment> v;
  v.push_back({"ball", "Spherical harmonics, Poisson expansion, reproducing identity and ball norms",
               [](Budget) {
                 return Json{{"gram_K", 8},
                             {"poisson_r", 0.5},
                             {"poisson_K", 40},
                             {"algebra_K", 12},
                             {"reproducing_K", 16},
                             {"reproducing_resolution", 128},
                             {"norm_K", 6},
                             {"da_alpha", {0.5, 1.0}}};
               },
               run_ball});
  v.push_back({"thm8_9", "Multiplier sufficiency tables and functional finiteness",
               [](Budget b) {
                 return Json{{"n", 2},
                             {"K", 16},
                             {"panel", tier(b, 4, 10, 10)},
                             {"decay", 0.9},
                             {"s", 2.0},
                             {"q", 2.0},
                             {"beta", 1.0},
                             {"alpha", 1.0},
                             {"m", 1},
                             {"rho_levels", 12},
                             {"stability", 0.05}};
               },
               run_thm8_9});
  return v;
}

}  // namespace hfs::verify
