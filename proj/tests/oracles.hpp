#pragma once

// Independent reference values for the unit tests. Nothing here calls into the library.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                      int depth = 40) {
  struct Rec {
    const std::function<double(double)>& f;
    double run(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) const {
      const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return Rec{f}.run(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

/// Half-space Poisson kernel on R^2_+ (n = 1): t / (pi (x^2 + t^2)).
inline double poisson_n1(double x, double t) { return t / (pi * (x * x + t * t)); }

/// Half-space Poisson kernel on R^3_+ (n = 2): t / (2 pi (|x|^2 + t^2)^{3/2}).
inline double poisson_n2(double r2, double t) { return t / (2.0 * pi * std::pow(r2 + t * t, 1.5)); }

/// n = 1: Q_l = 2^{l+1}(l+1)/pi Re((i / (x + i tau))^{l+2}), from P = Re(i / (pi (x + i tau))).
inline double bergman_q_n1(int l, double x, double tau) {
  const std::complex<double> w = std::complex<double>(0.0, 1.0) / std::complex<double>(x, tau);
  return std::pow(2.0, l + 1) * (l + 1) / pi * std::real(std::pow(w, l + 2));
}

/// d^l/dtau^l (rho + tau^2)^{-1}: the n = 3 test function, expanded by hand for l <= 2.
inline double test_fn_n3(int l, double rho, double tau) {
  const double d = rho + tau * tau;
  switch (l) {
    case 0: return 1.0 / d;
    case 1: return -2.0 * tau / (d * d);
    case 2: return (6.0 * tau * tau - 2.0 * rho) / (d * d * d);
    default: return std::nan("");
  }
}

/// d^l/dtau^l (rho + tau^2)^{-1/2}: the n = 2 test function, for l <= 2.
inline double test_fn_n2(int l, double rho, double tau) {
  const double d = std::sqrt(rho + tau * tau);
  switch (l) {
    case 0: return 1.0 / d;
    case 1: return -tau / (d * d * d);
    case 2: return (2.0 * tau * tau - rho) / std::pow(d, 5);
    default: return std::nan("");
  }
}

/// Legendre polynomials P_0..P_3.
inline double legendre(int k, double x) {
  switch (k) {
    case 0: return 1.0;
    case 1: return x;
    case 2: return 0.5 * (3.0 * x * x - 1.0);
    case 3: return 0.5 * (5.0 * x * x * x - 3.0 * x);
    default: return std::nan("");
  }
}

/// Zonal harmonic on S^2 for the normalized measure: (2k + 1) P_k.
inline double zonal_s2(int k, double c) { return (2.0 * k + 1.0) * legendre(k, c); }

/// Real degree-1 harmonics on S^2, normalized measure: sqrt(3) (z, x, y).
inline double y1(int j, double x, double y, double z) {
  const double s = std::sqrt(3.0);
  return j == 0 ? s * z : (j == 1 ? s * x : s * y);
}

/// Zonal degree-2 harmonic on S^2: sqrt(5)/2 (3 z^2 - 1).
inline double y20(double z) { return 0.5 * std::sqrt(5.0) * (3.0 * z * z - 1.0); }

/// B(a, b).
inline double beta(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

/// integral_{-X}^{X} P_{n=1}(x, tau)^2 dx = (atan(u) + u / (1 + u^2)) / (pi^2 tau), u = X / tau.
inline double poisson_sq_line_integral(double X, double tau) {
  const double u = X / tau;
  return (std::atan(u) + u / (1.0 + u * u)) / (pi * pi * tau);
}

/// integral over [x0, x1] x [t0, t1] of t^lambda dx dt.
inline double weighted_box(double x0, double x1, double t0, double t1, double lambda) {
  return (x1 - x0) * (std::pow(t1, lambda + 1.0) - std::pow(t0, lambda + 1.0)) / (lambda + 1.0);
}

}  // namespace oracle
