#include "hfs/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hfs {

namespace {

void require_exponent(double p, const char* what) {
  if (!(p > 0.0)) throw std::invalid_argument(std::string(what) + ": exponent must be positive");
}

double root(double acc, double p) { return acc > 0.0 ? std::pow(acc, 1.0 / p) : 0.0; }

double slice_value(const HarmonicField& f, double p, double t, const QuadratureSpec& quad) {
  const HalfSpaceRule rule = make_slice_rule(quad, f.n, t, f.radial_center);
  if (std::isinf(p)) {
    double best = 0.0;
    rule.visit([&](std::size_t, const Point& z, double) { best = std::max(best, std::abs(f(z))); });
    return best;
  }
  const double acc = rule.reduce([&](std::size_t, const Point& z, double w) {
    return w * std::pow(std::abs(f(z)), p);
  });
  return root(acc, p);
}

int halton_prime(int k) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  return primes[k];
}

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

std::vector<Eigen::VectorXd> halton_points(int dim, int count, int skip) {
  if (dim > 10) throw std::invalid_argument("halton_points: dimension above 10");
  std::vector<Eigen::VectorXd> pts(count, Eigen::VectorXd(dim));
  for (int i = 0; i < count; ++i)
    for (int d = 0; d < dim; ++d) pts[i][d] = radical_inverse(static_cast<std::uint64_t>(i + skip), halton_prime(d));
  return pts;
}

NormValue slice_norm(const HarmonicField& f, double p, double t, const QuadratureSpec& quad) {
  require_exponent(p, "slice_norm");
  return {slice_value(f, p, t, quad), quad.region, quad.id()};
}

NormValue bergman_norm(const HarmonicField& f, double p, double alpha, const QuadratureSpec& quad) {
  require_exponent(p, "bergman_norm");
  if (!(alpha > -1.0)) throw std::invalid_argument("bergman_norm: alpha must exceed -1");
  const HalfSpaceRule rule = make_rule(quad, f.n, f.radial_center);
  const double acc = rule.reduce([&](std::size_t, const Point& z, double w) {
    return w * std::pow(z.t, alpha) * std::pow(std::abs(f(z)), p);
  });
  return {root(acc, p), quad.region, quad.id()};
}

NormValue mixed_norm_B(const HarmonicField& f, double p, double q, double alpha,
                       const QuadratureSpec& quad) {
  require_exponent(p, "mixed_norm_B");
  require_exponent(q, "mixed_norm_B");
  if (!(alpha > 0.0)) throw std::invalid_argument("mixed_norm_B: alpha must be positive");
  const AxisRule tr = make_t_rule(quad);
  std::vector<double> slices(tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) slices[i] = slice_value(f, q, tr.nodes[i], quad);
  if (std::isinf(p)) {
    double best = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i)
      best = std::max(best, std::pow(tr.nodes[i], alpha) * slices[i]);
    return {best, quad.region, quad.id()};
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i)
    acc += tr.weights[i] * std::pow(slices[i], p) * std::pow(tr.nodes[i], alpha * p - 1.0);
  return {root(acc, p), quad.region, quad.id()};
}

NormValue triebel_norm(const HarmonicField& f, double p, double q, double alpha,
                       const QuadratureSpec& quad) {
  require_exponent(p, "triebel_norm");
  require_exponent(q, "triebel_norm");
  if (!(alpha > 0.0)) throw std::invalid_argument("triebel_norm: alpha must be positive");
  const AxisRule tr = make_t_rule(quad);
  std::vector<double> tw(tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i)
    tw[i] = tr.weights[i] * std::pow(tr.nodes[i], alpha * q - 1.0);
  const HalfSpaceRule xr = make_spatial_rule(quad, f.n, quad.graded_h0, f.radial_center);
  const double acc = xr.reduce([&](std::size_t, const Point& x, double w) {
    Point z = x;
    double inner = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
      z.t = tr.nodes[i];
      inner += tw[i] * std::pow(std::abs(f(z)), q);
    }
    return w * std::pow(inner, p / q);
  });
  return {root(acc, p), quad.region, quad.id()};
}

SupResult sup_norm_A_infty(const HarmonicField& f, double lambda, const SampleSpec& spec) {
  if (!(lambda > 0.0)) throw std::invalid_argument("sup_norm_A_infty: lambda must be positive");
  if (!spec.region.valid()) throw std::invalid_argument("sup_norm_A_infty: invalid region");
  const int n = f.n;
  const Region& reg = spec.region;
  const double lt0 = std::log(reg.t_min), lt1 = std::log(reg.t_max);
  // Coordinates: u in [0,1]^{n+1}; x = -X + 2X u, log t = lt0 + (lt1 - lt0) u_n.
  auto to_point = [&](const Eigen::VectorXd& u) {
    Point z = origin_point(n, 1.0);
    for (int i = 0; i < n; ++i) z.x[i] = reg.x_max * (2.0 * u[i] - 1.0);
    z.t = std::exp(lt0 + (lt1 - lt0) * u[n]);
    return z;
  };
  auto objective = [&](const Eigen::VectorXd& u) {
    const Point z = to_point(u);
    return std::pow(z.t, lambda) * std::abs(f(z));
  };

  std::vector<Eigen::VectorXd> pts = halton_points(n + 1, spec.samples);
  std::vector<double> vals(pts.size());
  parallel_map(vals, [&](std::size_t i) { return objective(pts[i]); });

  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t starts = std::min<std::size_t>(spec.starts, order.size());
  std::partial_sort(order.begin(), order.begin() + starts, order.end(), [&](std::size_t a, std::size_t b) {
    return vals[a] > vals[b] || (vals[a] == vals[b] && a < b);
  });

  const double step0 = 0.5 * std::pow(static_cast<double>(spec.samples), -1.0 / (n + 1));
  double best = 0.0;
  Eigen::VectorXd best_u = pts.empty() ? Eigen::VectorXd::Constant(n + 1, 0.5) : pts[order[0]];
  for (std::size_t s = 0; s < starts; ++s) {
    Eigen::VectorXd u = pts[order[s]];
    double v = vals[order[s]];
    double step = step0;
    for (int it = 0; it < spec.refine_iters && step > 1e-10; ++it) {
      bool moved = false;
      for (int d = 0; d <= n && !moved; ++d)
        for (double sign : {1.0, -1.0}) {
          Eigen::VectorXd cand = u;
          cand[d] = std::clamp(cand[d] + sign * step, 0.0, 1.0);
          const double cv = objective(cand);
          if (cv > v) {
            u = cand;
            v = cv;
            moved = true;
            break;
          }
        }
      if (!moved) step *= 0.5;
    }
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  return {best, to_point(best_u), reg};
}

double cube_max_abs(const HarmonicField& f, const WhitneyCube& cube, int per_axis) {
  const Box b = cube.box();
  const int n = cube.dim();
  const int k = std::max(2, per_axis);
  int idx[kMaxSpatialDim + 1] = {};
  Point z = origin_point(n, 1.0);
  double best = 0.0;
  while (true) {
    for (int a = 0; a < n; ++a) z.x[a] = b.lo[a] + (b.hi[a] - b.lo[a]) * idx[a] / (k - 1);
    z.t = b.lo[n] + (b.hi[n] - b.lo[n]) * idx[n] / (k - 1);
    best = std::max(best, std::abs(f(z)));
    int a = n;
    for (; a >= 0; --a) {
      if (++idx[a] < k) break;
      idx[a] = 0;
    }
    if (a < 0) break;
  }
  return best;
}

double whitney_discrete_norm(const HarmonicField& f, double p, double alpha,
                             std::span<const WhitneyCube> cubes, int per_axis) {
  require_exponent(p, "whitney_discrete_norm");
  if (!(alpha > 0.0)) throw std::invalid_argument("whitney_discrete_norm: alpha must be positive");
  const double acc = ordered_sum(cubes.size(), [&](std::size_t i) {
    const WhitneyCube& c = cubes[i];
    return std::pow(c.eta(), alpha * p - 1.0) * std::pow(cube_max_abs(f, c, per_axis), p) * c.volume();
  });
  return root(acc, p);
}

double integrate_box(const Box& box, int order, const std::function<double(const Point&)>& g) {
  const int n = box.dim();
  const GaussLegendre& gl = gauss_legendre(order);
  int idx[kMaxSpatialDim + 1] = {};
  Point z = origin_point(n, 1.0);
  const Eigen::VectorXd half = 0.5 * (box.hi - box.lo);
  const Eigen::VectorXd mid = box.center();
  double acc = 0.0;
  while (true) {
    double w = 1.0;
    for (int a = 0; a <= n; ++a) {
      const double v = mid[a] + half[a] * gl.nodes[idx[a]];
      if (a < n)
        z.x[a] = v;
      else
        z.t = v;
      w *= half[a] * gl.weights[idx[a]];
    }
    acc += w * g(z);
    int a = n;
    for (; a >= 0; --a) {
      if (++idx[a] < order) break;
      idx[a] = 0;
    }
    if (a < 0) break;
  }
  return acc;
}

std::vector<LocalBoundRow> local_bound_table(const HarmonicField& f, double p, double alpha,
                                             std::span<const WhitneyCube> cubes, double factor,
                                             int order, int per_axis) {
  require_exponent(p, "local_bound_table");
  if (!(alpha > 0.0)) throw std::invalid_argument("local_bound_table: alpha must be positive");
  const double w = alpha * p - 1.0;
  std::vector<LocalBoundRow> rows(cubes.size());
  parallel_map(rows, [&](std::size_t i) {
    LocalBoundRow r;
    r.cube = cubes[i];
    r.lhs = std::pow(r.cube.eta(), w) * std::pow(cube_max_abs(f, r.cube, per_axis), p);
    const Box big = enlarge(r.cube, factor);
    r.rhs = integrate_box(big, order, [&](const Point& z) {
              return std::pow(z.t, w) * std::pow(std::abs(f(z)), p);
            }) /
            big.volume();
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
    return r;
  });
  return rows;
}

}  // namespace hfs
