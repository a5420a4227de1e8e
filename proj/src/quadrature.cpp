#include "hfs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hfs {

namespace {

int thread_cap = 0;

GaussLegendre compute_gauss_legendre(int order) {
  GaussLegendre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p1 = x, p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (order == 1) {
      x = 0.0;
      dp = 1.0;
    }
    const double w = order == 1 ? 2.0 : 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

}  // namespace

void set_thread_limit(int threads) { thread_cap = std::max(0, threads); }
int thread_limit() { return thread_cap; }

const GaussLegendre& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussLegendre>(compute_gauss_legendre(order));
  return *slot;
}

void AxisRule::append_panel(double a, double b, int order) {
  if (!(b > a)) return;
  const GaussLegendre& gl = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int i = 0; i < order; ++i) {
    nodes.push_back(mid + half * gl.nodes[i]);
    weights.push_back(half * gl.weights[i]);
  }
}

AxisRule panel_rule(std::span<const double> breaks, int order) {
  AxisRule rule;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) rule.append_panel(breaks[i], breaks[i + 1], order);
  return rule;
}

std::vector<double> geometric_breaks(double lo, double hi, double ratio) {
  if (!(lo > 0.0 && hi > lo && ratio > 1.0))
    throw std::invalid_argument("geometric_breaks: need 0 < lo < hi and ratio > 1");
  std::vector<double> b{lo};
  for (double v = lo * ratio; v < hi * (1.0 - 1e-12); v *= ratio) b.push_back(v);
  b.push_back(hi);
  return b;
}

std::vector<double> dyadic_breaks(double lo, double hi) {
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("dyadic_breaks: need 0 < lo < hi");
  std::vector<double> b{lo};
  for (double v = std::exp2(std::floor(std::log2(lo)) + 1.0); v < hi; v *= 2.0)
    if (v > lo) b.push_back(v);
  b.push_back(hi);
  return b;
}

std::vector<double> lattice_breaks(double lo, double hi, double width) {
  std::vector<double> b{lo};
  for (double k = std::floor(lo / width) + 1.0;; k += 1.0) {
    const double v = k * width;
    if (v >= hi) break;
    if (v > lo) b.push_back(v);
  }
  b.push_back(hi);
  return b;
}

std::vector<double> graded_breaks(double center, double h0, double lo, double hi) {
  if (!(h0 > 0.0)) throw std::invalid_argument("graded_breaks: h0 must be positive");
  std::vector<double> offsets{0.0};
  const double reach = std::max(std::abs(hi - center), std::abs(center - lo));
  for (double h = h0; offsets.back() < reach; h = offsets.size() < 2 ? h0 : 2.0 * h)
    offsets.push_back(offsets.back() + h);
  std::vector<double> b;
  for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) {
    const double v = center - *it;
    if (v > lo && v < hi) b.push_back(v);
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) {
    const double v = center + offsets[i];
    if (v > lo && v < hi) b.push_back(v);
  }
  b.insert(b.begin(), lo);
  b.push_back(hi);
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

std::vector<double> endpoint_graded_breaks(int levels) {
  std::vector<double> b;
  for (int i = 0; i <= levels; ++i) b.push_back(1.0 - std::exp2(-i));
  return b;
}

double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

void QuadratureSpec::validate() const {
  if (order < 2) throw std::invalid_argument("QuadratureSpec: order must be >= 2");
  if (!(t_ratio > 1.0 && t_ratio <= 2.0))
    throw std::invalid_argument("QuadratureSpec: t_ratio must lie in (1, 2]");
  if (!region.valid()) throw std::invalid_argument("QuadratureSpec: invalid region");
  if (!(graded_h0 > 0.0) || !(slice_h_factor > 0.0))
    throw std::invalid_argument("QuadratureSpec: panel widths must be positive");
}

std::string QuadratureSpec::id() const {
  std::ostringstream os;
  os << (layout == Layout::whitney ? "whitney" : "graded") << "-o" << order;
  if (floor_level != kNoFloor) os << "-f" << floor_level;
  if (layout == Layout::graded) os << "-h" << graded_h0;
  return os.str();
}

QuadratureSpec QuadratureSpec::refined() const {
  QuadratureSpec s = *this;
  s.order = 2 * order;
  return s;
}

HalfSpaceRule::HalfSpaceRule(int n, std::vector<Block> blocks)
    : n_(n), radial_(false), center_(SpatialVector::Zero(n)), blocks_(std::move(blocks)) {
  build_chunks();
}

HalfSpaceRule::HalfSpaceRule(int n, SpatialVector radial_center, std::vector<Block> blocks)
    : n_(n), radial_(true), center_(std::move(radial_center)), blocks_(std::move(blocks)) {
  build_chunks();
}

void HalfSpaceRule::build_chunks() {
  chunks_.clear();
  size_ = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    std::size_t per_t = 1;
    for (const AxisRule& a : blocks_[b].x) per_t *= a.size();
    for (std::size_t k = 0; k < blocks_[b].t.size(); ++k) {
      chunks_.push_back({b, k, size_});
      size_ += per_t;
    }
  }
}

namespace {

AxisRule radial_axis(int n, std::span<const double> breaks, int order) {
  AxisRule r = panel_rule(breaks, order);
  const double area = sphere_area(n);
  for (std::size_t i = 0; i < r.size(); ++i)
    r.weights[i] *= area * std::pow(r.nodes[i], n - 1);
  return r;
}

double center_coord(const QuadratureSpec& spec, int axis) {
  return spec.center.size() > axis ? spec.center[axis] : 0.0;
}

}  // namespace

HalfSpaceRule make_rule(const QuadratureSpec& spec, int n,
                        const std::optional<SpatialVector>& radial_center) {
  spec.validate();
  const Region& reg = spec.region;
  const bool radial = radial_center.has_value() && spec.exploit_radial;
  const std::vector<double> layers = dyadic_breaks(reg.t_min, reg.t_max);
  std::vector<HalfSpaceRule::Block> blocks;

  if (spec.layout == Layout::whitney) {
    for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
      const double a = layers[i], b = layers[i + 1];
      int level = static_cast<int>(std::floor(std::log2(a)));
      if (std::exp2(level + 1) <= a) ++level;
      const int side_level = spec.floor_level == kNoFloor ? level : std::max(level, spec.floor_level);
      const double width = std::exp2(side_level);
      HalfSpaceRule::Block blk;
      blk.t.append_panel(a, b, spec.order);
      if (radial) {
        const auto br = lattice_breaks(0.0, reg.x_max, width);
        blk.x.push_back(radial_axis(n, br, spec.order));
      } else {
        const auto br = lattice_breaks(-reg.x_max, reg.x_max, width);
        const AxisRule ax = panel_rule(br, spec.order);
        blk.x.assign(n, ax);
      }
      blocks.push_back(std::move(blk));
    }
  } else {
    HalfSpaceRule::Block blk;
    blk.t = panel_rule(layers, spec.order);
    if (radial) {
      const auto br = graded_breaks(0.0, spec.graded_h0, 0.0, reg.x_max);
      blk.x.push_back(radial_axis(n, br, spec.order));
    } else {
      for (int a = 0; a < n; ++a) {
        const auto br = graded_breaks(center_coord(spec, a), spec.graded_h0, -reg.x_max, reg.x_max);
        blk.x.push_back(panel_rule(br, spec.order));
      }
    }
    blocks.push_back(std::move(blk));
  }
  if (radial) return HalfSpaceRule(n, *radial_center, std::move(blocks));
  return HalfSpaceRule(n, std::move(blocks));
}

HalfSpaceRule make_spatial_rule(const QuadratureSpec& spec, int n, double h0,
                                const std::optional<SpatialVector>& radial_center) {
  spec.validate();
  const double X = spec.region.x_max;
  h0 = std::clamp(h0, X * 1e-12, X);
  HalfSpaceRule::Block blk;
  blk.t.nodes = {1.0};
  blk.t.weights = {1.0};
  if (radial_center && spec.exploit_radial) {
    const auto br = graded_breaks(0.0, h0, 0.0, X);
    blk.x.push_back(radial_axis(n, br, spec.order));
    return HalfSpaceRule(n, *radial_center, {std::move(blk)});
  }
  for (int a = 0; a < n; ++a) {
    const auto br = graded_breaks(center_coord(spec, a), h0, -X, X);
    blk.x.push_back(panel_rule(br, spec.order));
  }
  return HalfSpaceRule(n, {std::move(blk)});
}

HalfSpaceRule make_slice_rule(const QuadratureSpec& spec, int n, double t,
                              const std::optional<SpatialVector>& radial_center) {
  if (!(t > 0.0)) throw std::invalid_argument("make_slice_rule: t must be positive");
  QuadratureSpec s = spec;
  if (radial_center && spec.layout == Layout::graded) s.center = *radial_center;
  if (radial_center && s.center.size() == 0) s.center = *radial_center;
  HalfSpaceRule rule = make_spatial_rule(s, n, spec.slice_h_factor * t, radial_center);
  auto blocks = rule.blocks();
  blocks[0].t.nodes = {t};
  if (rule.radial()) return HalfSpaceRule(n, rule.radial_center(), std::move(blocks));
  return HalfSpaceRule(n, std::move(blocks));
}

AxisRule make_t_rule(const QuadratureSpec& spec) {
  spec.validate();
  const auto br = geometric_breaks(spec.region.t_min, spec.region.t_max, spec.t_ratio);
  return panel_rule(br, spec.order);
}

}  // namespace hfs
