#pragma once

#include "hfs/types.hpp"

#include <cmath>
#include <vector>

namespace hfs {

/// Normalization c_n = Gamma((n+1)/2) / pi^{(n+1)/2} of the half-space Poisson kernel.
double poisson_constant(int n);

namespace detail {

/// d^{-k/2} for a non-negative integer k (k = twice the exponent).
template <class Scalar>
Scalar inv_half_power(Scalar d, int twice_exponent) {
  Scalar r = Scalar(1);
  Scalar base = Scalar(1) / d;
  for (int e = twice_exponent / 2; e > 0; e >>= 1, base *= base)
    if (e & 1) r *= base;
  if (twice_exponent & 1) r /= std::sqrt(d);
  return r;
}

}  // namespace detail

/// P(x, t) = c_n t (|x|^2 + t^2)^{-(n+1)/2}, as a function of r2 = |x|^2.
template <class Scalar>
Scalar poisson(int n, Scalar r2, Scalar t) {
  return Scalar(poisson_constant(n)) * t * detail::inv_half_power(r2 + t * t, n + 1);
}

double poisson(const SpatialVector& x, double t);

/// Coefficients a_i of R_k(tau, rho) = sum_i a_i tau^{k+1-2i} rho^i, where
/// d^k/dtau^k P = c_n R_k (rho + tau^2)^{-(n+1)/2-k}.
struct PoissonDerivative {
  int k = 0;
  int n = 1;
  std::vector<double> coeffs;

  template <class Scalar>
  Scalar eval_numerator(Scalar tau, Scalar rho) const {
    // Horner in v = rho / tau^2, then scale by tau^{k+1}.
    const Scalar v = rho / (tau * tau);
    Scalar acc = Scalar(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * v + Scalar(*it);
    Scalar tk = Scalar(1);
    for (int i = 0; i <= k; ++i) tk *= tau;
    return acc * tk;
  }
};

/// Cached table for (k, n); thread-safe, immutable after construction.
const PoissonDerivative& poisson_derivative(int k, int n);

/// Q_l as a function of rho = |x - y|^2 and tau = t + s:
/// ((-2)^{l+1} / l!) d^{l+1}/dtau^{l+1} P(x - y, tau). Construct once, evaluate many times.
class BergmanKernel {
 public:
  BergmanKernel(int l, int n);

  int order() const { return l_; }
  int dim() const { return n_; }

  template <class Scalar>
  Scalar operator()(Scalar rho, Scalar tau) const {
    return Scalar(scale_) * r_->eval_numerator(tau, rho) *
           detail::inv_half_power(rho + tau * tau, n_ + 1 + 2 * (l_ + 1));
  }

 private:
  int l_;
  int n_;
  const PoissonDerivative* r_;
  double scale_;
};

template <class Scalar>
Scalar bergman_q(int l, int n, Scalar rho, Scalar tau) {
  return BergmanKernel(l, n)(rho, tau);
}

/// Q_l(z, w). Throws std::invalid_argument when t <= 0 or s <= 0.
double bergman_q(int l, const Point& z, const Point& w);

/// Integer polynomial P_l(u) with d^l/dt^l |z - w̄|^{1-n} = |z - w̄|^{1-n-l} P_l(u),
/// u = (t + s) / |z - w̄|. coeffs[i] multiplies u^i.
struct DerivPolynomial {
  int l = 0;
  int n = 1;
  std::vector<double> coeffs;

  double operator()(double u) const;
  DerivPolynomial derivative() const;
  /// Real roots in [a, b] located by sign changes on a fine grid plus bisection.
  std::vector<double> roots_in(double a, double b) const;
};

/// P_0 = 1, P_{l+1} = (1 - u^2) P_l' - (n - 1 + l) u P_l. Cached and thread-safe.
const DerivPolynomial& deriv_polynomial(int l, int n);

/// f_{w,l} as a function of rho = |x - y|^2 and tau = t + s.
class TestFunctionKernel {
 public:
  TestFunctionKernel(int l, int n);

  template <class Scalar>
  Scalar operator()(Scalar rho, Scalar tau) const {
    const Scalar d2 = rho + tau * tau;
    const Scalar u = tau / std::sqrt(d2);
    Scalar acc = Scalar(0);
    for (auto it = p_->coeffs.rbegin(); it != p_->coeffs.rend(); ++it) acc = acc * u + Scalar(*it);
    return acc * detail::inv_half_power(d2, n_ - 1 + l_);
  }

 private:
  int l_;
  int n_;
  const DerivPolynomial* p_;
};

template <class Scalar>
Scalar test_fn(int l, int n, Scalar rho, Scalar tau) {
  return TestFunctionKernel(l, n)(rho, tau);
}

/// f_{w,l}(z) = d^l/dt^l |z - w̄|^{1-n}. Throws for n = 1 or non-positive heights.
double test_fn(const Point& w, int l, const Point& z);

/// Smallest u = (t+s)/|z - w̄| attained on Q_w: 1.5 / sqrt(2.25 + n/4).
double qw_u_min(int n);

/// Half the minimum of |P_l| over a grid of [qw_u_min(n), 1] with eps-neighborhoods
/// of the roots of P_l removed. Returns 0.5 for l = 0.
double default_delta(int l, int n, double eps = 0.05);

/// True iff |P_l(u(z))| > delta.
bool tw_set_indicator(const Point& w, int l, double delta, const Point& z);

}  // namespace hfs
