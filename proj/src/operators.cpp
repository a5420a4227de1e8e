#include "hfs/operators.hpp"

#include "hfs/kernels.hpp"
#include "hfs/parallel.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace hfs {

namespace {

Point slot_average(std::span<const Point> z) {
  Point a = z[0];
  for (std::size_t j = 1; j < z.size(); ++j) {
    a.x += z[j].x;
    a.t += z[j].t;
  }
  const double inv = 1.0 / static_cast<double>(z.size());
  a.x *= inv;
  a.t *= inv;
  return a;
}

// Kernel sum z -> sum_i coef[i] Q_k(z, w_i) over a rule, skipping zero coefficients.
struct KernelSum {
  HalfSpaceRule rule;
  std::vector<double> coef;
  BergmanKernel q;

  double operator()(const Point& z) const {
    return rule.reduce([&](std::size_t i, const Point& w, double) {
      const double c = coef[i];
      return c == 0.0 ? 0.0 : c * q((z.x - w.x).squaredNorm(), z.t + w.t);
    });
  }
};

}  // namespace

NodeSet collect_nodes(const HalfSpaceRule& rule) {
  NodeSet s;
  s.z.reserve(rule.size());
  s.w.reserve(rule.size());
  rule.visit([&](std::size_t, const Point& z, double w) {
    s.z.push_back(z);
    s.w.push_back(w);
  });
  return s;
}

HarmonicField trace(const MultiVarField& F) {
  HarmonicField f;
  f.n = F.n;
  f.id = "tr(" + F.id + ")";
  const int m = F.m;
  auto fn = F.fn;
  f.fn = [fn, m](const Point& z) {
    std::vector<Point> zs(static_cast<std::size_t>(m), z);
    return fn(zs);
  };
  if (!F.factors.empty()) {
    bool shared = true;
    for (const HarmonicField& g : F.factors)
      shared = shared && g.radial_center && F.factors[0].radial_center &&
               *g.radial_center == *F.factors[0].radial_center;
    if (shared) f.radial_center = F.factors[0].radial_center;
  }
  return f;
}

MultiVarField extend(const HarmonicField& g, int m, int k, const QuadratureSpec& quad,
                     std::optional<double> declared_lambda) {
  if (m < 1) throw std::invalid_argument("extend: m must be >= 1");
  if (k < 0) throw std::invalid_argument("extend: k must be >= 0");
  if (declared_lambda && !(k > *declared_lambda - 1.0))
    throw std::invalid_argument("extend: need k > lambda - 1 for the declared weight");
  auto data = std::make_shared<KernelSum>(KernelSum{make_rule(quad, g.n), {}, BergmanKernel(k, g.n)});
  data->coef.assign(data->rule.size(), 0.0);
  data->rule.visit([&](std::size_t i, const Point& w, double wt) {
    data->coef[i] = wt * g(w) * std::pow(w.t, k);
  });
  MultiVarField F;
  F.n = g.n;
  F.m = m;
  F.id = "ext" + std::to_string(m) + "_k" + std::to_string(k) + "(" + g.id + ")";
  F.fn = [data](std::span<const Point> z) { return (*data)(slot_average(z)); };
  return F;
}

MultiVarField s_ab(const HarmonicField& f, std::span<const double> a, std::span<const double> b,
                   const QuadratureSpec& quad) {
  if (a.empty() || a.size() != b.size()) throw std::invalid_argument("s_ab: a and b must have equal positive length");
  const int n = f.n;
  double bsum = 0.0;
  for (double v : b) bsum += v;
  auto rule = std::make_shared<HalfSpaceRule>(make_rule(quad, n));
  auto coef = std::make_shared<std::vector<double>>(rule->size());
  rule->visit([&](std::size_t i, const Point& w, double wt) {
    (*coef)[i] = wt * f(w) * std::pow(w.t, -n - 1.0 + bsum);
  });
  std::vector<double> av(a.begin(), a.end()), ab(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) ab[j] = a[j] + b[j];
  MultiVarField F;
  F.n = n;
  F.m = static_cast<int>(a.size());
  F.id = "S(" + f.id + ")";
  F.fn = [rule, coef, av, ab](std::span<const Point> z) {
    double pre = 1.0;
    for (std::size_t j = 0; j < z.size(); ++j) pre *= std::pow(z[j].t, av[j]);
    const double integral = rule->reduce([&](std::size_t i, const Point& w, double) {
      double v = (*coef)[i];
      if (v == 0.0) return 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) v *= std::pow(reflected_distance_sq(z[j], w), -0.5 * ab[j]);
      return v;
    });
    return pre * integral;
  };
  return F;
}

RatioReport s_ab_bound_check(const HarmonicField& f, std::span<const double> a,
                             std::span<const double> b, std::span<const double> s, double p,
                             const QuadratureSpec& outer, const QuadratureSpec& inner) {
  if (a.size() != 2 || b.size() != 2 || s.size() != 2)
    throw std::invalid_argument("s_ab_bound_check: implemented for m = 2");
  const int n = f.n;
  const NodeSet zo = collect_nodes(make_rule(outer, n));
  const NodeSet wi = collect_nodes(make_rule(inner, n));
  const Eigen::Index no = static_cast<Eigen::Index>(zo.size());
  const Eigen::Index ni = static_cast<Eigen::Index>(wi.size());
  const double bsum = b[0] + b[1];
  Eigen::VectorXd F(ni);
  for (Eigen::Index i = 0; i < ni; ++i)
    F[i] = wi.w[i] * f(wi.z[i]) * std::pow(wi.z[i].t, -n - 1.0 + bsum);
  Eigen::MatrixXd A1(no, ni), A2(no, ni);
  for (Eigen::Index r = 0; r < no; ++r)
    for (Eigen::Index i = 0; i < ni; ++i) {
      const double d2 = reflected_distance_sq(zo.z[r], wi.z[i]);
      A1(r, i) = std::pow(d2, -0.5 * (a[0] + b[0]));
      A2(r, i) = std::pow(d2, -0.5 * (a[1] + b[1]));
    }
  const Eigen::MatrixXd S = A1 * F.asDiagonal() * A2.transpose();
  Eigen::VectorXd w1(no), w2(no);
  for (Eigen::Index r = 0; r < no; ++r) {
    const double t = zo.z[r].t;
    w1[r] = zo.w[r] * std::pow(t, s[0]) * std::pow(t, p * a[0]);
    w2[r] = zo.w[r] * std::pow(t, s[1]) * std::pow(t, p * a[1]);
  }
  RatioReport out;
  out.lhs = w1.transpose() * S.cwiseAbs().array().pow(p).matrix() * w2;
  const double lambda = (n + 1.0) + s[0] + s[1];
  out.rhs = std::pow(bergman_norm(f, p, lambda, inner).value, p);
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

RatioReport lemma7_check(const MultiVarField& F, double p, std::span<const double> s,
                         const QuadratureSpec& quad) {
  if (static_cast<int>(s.size()) != F.m) throw std::invalid_argument("lemma7_check: need one weight per slot");
  double ssum = 0.0;
  for (double v : s) {
    if (!(v > -1.0)) throw std::invalid_argument("lemma7_check: weights must exceed -1");
    ssum += v;
  }
  const double lambda = (F.m - 1.0) * (F.n + 1.0) + ssum;
  RatioReport out;
  out.lhs = std::pow(bergman_norm(trace(F), p, lambda, quad).value, p);
  if (!F.factors.empty()) {
    out.rhs = 1.0;
    for (std::size_t j = 0; j < F.factors.size(); ++j)
      out.rhs *= std::pow(bergman_norm(F.factors[j], p, s[j], quad).value, p);
  } else {
    if (F.m > 2) throw std::invalid_argument("lemma7_check: non-product fields need m <= 2");
    const NodeSet nodes = collect_nodes(make_rule(quad, F.n));
    if (F.m == 1) {
      out.rhs = std::pow(bergman_norm(trace(F), p, s[0], quad).value, p);
    } else {
      out.rhs = ordered_sum(nodes.size(), [&](std::size_t i) {
        Point zz[2] = {nodes.z[i], nodes.z[i]};
        double acc = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          zz[1] = nodes.z[j];
          acc += nodes.w[j] * std::pow(nodes.z[j].t, s[1]) * std::pow(std::abs(F(zz)), p);
        }
        return nodes.w[i] * std::pow(nodes.z[i].t, s[0]) * acc;
      });
    }
  }
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

bool v_set_member(const HarmonicField& f, double eps, double lambda, const Point& z) {
  return std::abs(f(z)) * std::pow(z.t, lambda) >= eps;
}

SplitResult distance_split(const HarmonicField& f, double eps, double lambda, int m_order,
                           double m_floor, const QuadratureSpec& quad) {
  if (!(m_order > m_floor)) throw std::invalid_argument("distance_split: m_order too small");
  if (!(eps > 0.0) || !(lambda > 0.0)) throw std::invalid_argument("distance_split: eps and lambda must be positive");
  auto inside = std::make_shared<KernelSum>(KernelSum{make_rule(quad, f.n), {}, BergmanKernel(m_order, f.n)});
  auto outside = std::make_shared<KernelSum>(*inside);
  inside->coef.assign(inside->rule.size(), 0.0);
  outside->coef.assign(inside->rule.size(), 0.0);
  SplitResult r;
  r.nodes_total = inside->rule.size();
  inside->rule.visit([&](std::size_t i, const Point& w, double wt) {
    const double fw = f(w);
    const double c = wt * fw * std::pow(w.t, m_order);
    if (std::abs(fw) * std::pow(w.t, lambda) >= eps) {
      inside->coef[i] = c;
      ++r.nodes_in_v;
    } else {
      outside->coef[i] = c;
    }
  });
  std::ostringstream tag;
  tag << "_eps" << eps;
  r.f1 = {f.n, "split1" + tag.str() + "(" + f.id + ")", [outside](const Point& z) { return (*outside)(z); }, std::nullopt};
  r.f2 = {f.n, "split2" + tag.str() + "(" + f.id + ")", [inside](const Point& z) { return (*inside)(z); }, std::nullopt};
  return r;
}

D2Estimate d2_estimate(const HarmonicField& f, std::span<const double> eps_grid, double p,
                       double alpha, int m_order, const QuadratureSpec& quad, int doublings,
                       double growth_threshold) {
  if (!(p > 0.0)) throw std::invalid_argument("d2_estimate: p must be positive");
  for (std::size_t i = 1; i < eps_grid.size(); ++i)
    if (!(eps_grid[i] < eps_grid[i - 1])) throw std::invalid_argument("d2_estimate: eps grid must decrease");
  const int n = f.n;
  const double lambda = (alpha + n + 1.0) / p;
  const BergmanKernel q(m_order, n);

  std::vector<NodeSet> nodes;
  std::vector<std::vector<double>> fvals;
  QuadratureSpec s = quad;
  for (int d = 0; d <= doublings; ++d) {
    nodes.push_back(collect_nodes(make_rule(s, n)));
    std::vector<double> v(nodes.back().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(f(nodes.back().z[i])) * std::pow(nodes.back().z[i].t, lambda);
    fvals.push_back(std::move(v));
    s.region = s.region.doubled();
  }

  D2Estimate est;
  for (double eps : eps_grid) {
    D2Step step;
    step.eps = eps;
    for (int d = 0; d <= doublings; ++d) {
      const NodeSet& ns = nodes[d];
      std::vector<std::size_t> in_v;
      for (std::size_t i = 0; i < ns.size(); ++i)
        if (fvals[d][i] >= eps) in_v.push_back(i);
      std::vector<double> g(in_v.size());
      for (std::size_t k = 0; k < in_v.size(); ++k) {
        const Point& w = ns.z[in_v[k]];
        g[k] = ns.w[in_v[k]] * std::pow(w.t, m_order - lambda);
      }
      const double I = in_v.empty() ? 0.0 : ordered_sum(ns.size(), [&](std::size_t i) {
        const Point& z = ns.z[i];
        double inner = 0.0;
        for (std::size_t k = 0; k < in_v.size(); ++k) {
          const Point& w = ns.z[in_v[k]];
          inner += g[k] * std::abs(q((z.x - w.x).squaredNorm(), z.t + w.t));
        }
        return ns.w[i] * std::pow(inner, p) * std::pow(z.t, alpha);
      });
      step.integrals.push_back(I);
    }
    const double last = step.integrals.back();
    const double prev = step.integrals[step.integrals.size() - 2];
    step.growth = prev > 0.0 ? last / prev : (last > 0.0 ? kInfinity : 1.0);
    step.divergent = step.growth >= growth_threshold;
    est.trace.push_back(step);
    if (step.divergent) break;
    est.value = eps;
    est.found = true;
  }
  return est;
}

DictionaryFit dictionary_distance(const HarmonicField& f, std::span<const HarmonicField> dictionary,
                                  double lambda, const SampleSpec& spec) {
  const int n = f.n;
  const Region& reg = spec.region;
  const auto pts = halton_points(n + 1, spec.samples);
  const Eigen::Index rows = static_cast<Eigen::Index>(pts.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(dictionary.size());
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    Point z = origin_point(n, 1.0);
    for (int d = 0; d < n; ++d) z.x[d] = reg.x_max * (2.0 * pts[i][d] - 1.0);
    z.t = std::exp(std::log(reg.t_min) + (std::log(reg.t_max) - std::log(reg.t_min)) * pts[i][n]);
    const double wt = std::pow(z.t, lambda);
    b[i] = wt * f(z);
    for (Eigen::Index j = 0; j < cols; ++j) A(i, j) = wt * dictionary[j](z);
  }
  DictionaryFit fit;
  Eigen::VectorXd c = cols > 0 ? Eigen::VectorXd(A.colPivHouseholderQr().solve(b)) : Eigen::VectorXd();
  fit.coeffs.assign(c.data(), c.data() + c.size());
  std::vector<HarmonicField> dict(dictionary.begin(), dictionary.end());
  HarmonicField residual{n, "residual(" + f.id + ")",
                         [f, dict, c](const Point& z) {
                           double v = f(z);
                           for (std::size_t j = 0; j < dict.size(); ++j) v -= c[static_cast<Eigen::Index>(j)] * dict[j](z);
                           return v;
                         },
                         std::nullopt};
  fit.sup_residual = sup_norm_A_infty(residual, lambda, spec).value;
  return fit;
}

}  // namespace hfs
