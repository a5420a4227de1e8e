#include "hfs/kernels.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace hfs {

namespace {

void require_heights(const Point& z, const Point& w) {
  if (!(z.t > 0.0) || !(w.t > 0.0)) throw std::invalid_argument("kernel: heights must be positive");
  if (z.dim() != w.dim()) throw std::invalid_argument("kernel: dimension mismatch");
}

template <class T, class Make>
const T& cached(std::map<std::pair<int, int>, std::unique_ptr<T>>& cache, std::mutex& mutex,
                int a, int b, Make make) {
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{a, b}];
  if (!slot) slot = std::make_unique<T>(make());
  return *slot;
}

}  // namespace

double poisson_constant(int n) {
  return std::tgamma(0.5 * (n + 1)) / std::pow(std::numbers::pi, 0.5 * (n + 1));
}

double poisson(const SpatialVector& x, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("poisson: t must be positive");
  return poisson(static_cast<int>(x.size()), x.squaredNorm(), t);
}

const PoissonDerivative& poisson_derivative(int k, int n) {
  if (k < 0 || n < 1) throw std::invalid_argument("poisson_derivative: need k >= 0, n >= 1");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<PoissonDerivative>> cache;
  return cached(cache, mutex, k, n, [&] {
    PoissonDerivative r;
    r.n = n;
    r.coeffs = {1.0};
    for (int step = 0; step < k; ++step) {
      std::vector<double> next(r.coeffs.size() + 1, 0.0);
      for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
        const double a = r.coeffs[i];
        const double e = step + 1.0 - 2.0 * i;
        next[i] += a * (e - (n + 1.0 + 2.0 * step));
        next[i + 1] += a * e;
      }
      while (next.size() > 1 && next.back() == 0.0) next.pop_back();
      r.coeffs = std::move(next);
    }
    r.k = k;
    return r;
  });
}

BergmanKernel::BergmanKernel(int l, int n) : l_(l), n_(n) {
  if (l < 0) throw std::invalid_argument("bergman kernel: l must be >= 0");
  r_ = &poisson_derivative(l + 1, n);
  scale_ = poisson_constant(n) * std::ldexp(1.0, l + 1) / std::tgamma(l + 1.0);
  if ((l + 1) % 2) scale_ = -scale_;
}

TestFunctionKernel::TestFunctionKernel(int l, int n) : l_(l), n_(n) {
  if (l < 0) throw std::invalid_argument("test function: l must be >= 0");
  p_ = &deriv_polynomial(l, n);
}

double bergman_q(int l, const Point& z, const Point& w) {
  require_heights(z, w);
  if (l < 0) throw std::invalid_argument("bergman_q: l must be >= 0");
  return bergman_q(l, z.dim(), (z.x - w.x).squaredNorm(), z.t + w.t);
}

double DerivPolynomial::operator()(double u) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

DerivPolynomial DerivPolynomial::derivative() const {
  DerivPolynomial d;
  d.l = std::max(0, l - 1);
  d.n = n;
  for (std::size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(static_cast<double>(i) * coeffs[i]);
  if (d.coeffs.empty()) d.coeffs = {0.0};
  return d;
}

std::vector<double> DerivPolynomial::roots_in(double a, double b) const {
  std::vector<double> roots;
  const int grid = 4000;
  double x0 = a, f0 = (*this)(a);
  for (int i = 1; i <= grid; ++i) {
    const double x1 = a + (b - a) * i / grid;
    const double f1 = (*this)(x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if (f0 * f1 < 0.0) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = (*this)(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0.0) roots.push_back(b);
  return roots;
}

const DerivPolynomial& deriv_polynomial(int l, int n) {
  if (l < 0 || n < 1) throw std::invalid_argument("deriv_polynomial: need l >= 0, n >= 1");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<DerivPolynomial>> cache;
  return cached(cache, mutex, l, n, [&] {
    DerivPolynomial p;
    p.n = n;
    p.coeffs = {1.0};
    for (int step = 0; step < l; ++step) {
      std::vector<double> next(p.coeffs.size() + 1, 0.0);
      const double m = n - 1.0 + step;
      for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        const double a = p.coeffs[i];
        if (i >= 1) {
          next[i - 1] += a * static_cast<double>(i);
          next[i + 1] -= a * static_cast<double>(i);
        }
        next[i + 1] -= m * a;
      }
      p.coeffs = std::move(next);
    }
    p.l = l;
    return p;
  });
}

double test_fn(const Point& w, int l, const Point& z) {
  require_heights(z, w);
  if (z.dim() == 1) throw std::invalid_argument("test_fn: the family is degenerate for n = 1");
  if (l < 0) throw std::invalid_argument("test_fn: l must be >= 0");
  return test_fn(l, z.dim(), (z.x - w.x).squaredNorm(), z.t + w.t);
}

double qw_u_min(int n) { return 1.5 / std::sqrt(2.25 + 0.25 * n); }

double default_delta(int l, int n, double eps) {
  if (l == 0) return 0.5;
  const DerivPolynomial& p = deriv_polynomial(l, n);
  const double a = qw_u_min(n);
  const auto roots = p.roots_in(a - eps, 1.0 + eps);
  double best = std::numeric_limits<double>::infinity();
  const int grid = 2000;
  for (int i = 0; i <= grid; ++i) {
    const double u = a + (1.0 - a) * i / grid;
    const bool near_root = std::any_of(roots.begin(), roots.end(),
                                       [&](double r) { return std::abs(u - r) <= eps; });
    if (!near_root) best = std::min(best, std::abs(p(u)));
  }
  return std::isfinite(best) ? 0.5 * best : 0.0;
}

bool tw_set_indicator(const Point& w, int l, double delta, const Point& z) {
  require_heights(z, w);
  const double u = (z.t + w.t) / reflected_distance(z, w);
  return std::abs(deriv_polynomial(l, z.dim())(u)) > delta;
}

}  // namespace hfs
