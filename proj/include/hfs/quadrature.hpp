#pragma once

#include "hfs/parallel.hpp"
#include "hfs/types.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hfs {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule of the given order (order >= 1). Thread-safe.
const GaussLegendre& gauss_legendre(int order);

/// One-dimensional composite rule: nodes and weights on an interval.
struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  /// Appends `order`-point Gauss–Legendre on [a, b].
  void append_panel(double a, double b, int order);
  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// Composite Gauss–Legendre rule over consecutive panels [breaks[i], breaks[i+1]].
AxisRule panel_rule(std::span<const double> breaks, int order);

/// lo, lo*ratio, lo*ratio^2, ..., hi (last panel clipped). Requires 0 < lo < hi, ratio > 1.
std::vector<double> geometric_breaks(double lo, double hi, double ratio);
/// Breaks at powers of two inside (lo, hi), plus lo and hi.
std::vector<double> dyadic_breaks(double lo, double hi);
/// Multiples of `width` inside (lo, hi), plus lo and hi.
std::vector<double> lattice_breaks(double lo, double hi, double width);
/// Panels of width h0, h0, 2h0, 4h0, ... on both sides of `center`, clipped to [lo, hi].
std::vector<double> graded_breaks(double center, double h0, double lo, double hi);
/// Breaks 1 - 2^{-i}, i = 0..levels, on [0, 1): resolves algebraic endpoint weights at 1.
std::vector<double> endpoint_graded_breaks(int levels);

/// Surface area of the unit sphere S^{n-1} in R^n (2 for n = 1).
double sphere_area(int n);

enum class Layout { whitney, graded };

inline constexpr int kNoFloor = std::numeric_limits<int>::min();

/// Quadrature budget for half-space integrals.
struct QuadratureSpec {
  Region region{};
  int order = 4;                 ///< Gauss–Legendre nodes per axis per cell
  Layout layout = Layout::whitney;
  int floor_level = kNoFloor;    ///< whitney: spatial cell side is 2^max(level, floor_level)
  double graded_h0 = 0.25;       ///< graded: width of the innermost spatial panel
  SpatialVector center;          ///< graded refinement center; empty means the origin
  double t_ratio = 2.0;          ///< ratio of the geometric grid for outer t-integrals
  double slice_h_factor = 1.0;   ///< slice lattices start with panels of width factor * t
  bool exploit_radial = true;    ///< reduce fields with a declared radial center to (r, t)

  /// Throws std::invalid_argument on order < 2, t_ratio outside (1, 2], bad region.
  void validate() const;
  std::string id() const;
  /// Same budget with the Gauss order doubled.
  QuadratureSpec refined() const;
};

/// Tensor-product quadrature over (a truncation of) the half-space, stored as blocks
/// of per-axis rules. Cartesian blocks carry n spatial axes; radial blocks carry one
/// r axis whose weights already include |S^{n-1}| r^{n-1}, and map r to center + r e_1.
class HalfSpaceRule {
 public:
  struct Block {
    std::vector<AxisRule> x;
    AxisRule t;
  };

  HalfSpaceRule() = default;
  HalfSpaceRule(int n, std::vector<Block> blocks);
  HalfSpaceRule(int n, SpatialVector radial_center, std::vector<Block> blocks);

  int dim() const { return n_; }
  bool radial() const { return radial_; }
  const SpatialVector& radial_center() const { return center_; }
  std::size_t size() const { return size_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// Returns sum_i f(i, z_i, w_i) over all nodes; i is a stable node index.
  template <class F>
  double reduce(F&& f) const {
    return ordered_sum(chunks_.size(), [&](std::size_t c) { return chunk_sum(c, f); });
  }

  /// Calls f(i, z_i, w_i) sequentially in node-index order.
  template <class F>
  void visit(F&& f) const {
    for (std::size_t c = 0; c < chunks_.size(); ++c)
      chunk_sum(c, [&](std::size_t i, const Point& z, double w) {
        f(i, z, w);
        return 0.0;
      });
  }

  template <class F>
  double integrate(F&& f) const {
    return reduce([&](std::size_t, const Point& z, double w) { return w * f(z); });
  }

 private:
  struct Chunk {
    std::size_t block;
    std::size_t t_index;
    std::size_t offset;
  };

  void build_chunks();

  template <class F>
  double chunk_sum(std::size_t c, F&& f) const {
    const Chunk& ch = chunks_[c];
    const Block& blk = blocks_[ch.block];
    Point z;
    z.x = radial_ ? center_ : SpatialVector::Zero(n_);
    z.t = blk.t.nodes[ch.t_index];
    const double wt = blk.t.weights[ch.t_index];
    std::size_t index = ch.offset;
    double acc = 0.0;
    if (radial_) {
      const AxisRule& r = blk.x[0];
      for (std::size_t i = 0; i < r.size(); ++i) {
        z.x[0] = center_[0] + r.nodes[i];
        acc += f(index++, z, wt * r.weights[i]);
      }
      return acc;
    }
    int idx[kMaxSpatialDim] = {};
    for (int a = 0; a < n_; ++a) {
      if (blk.x[a].size() == 0) return 0.0;
      z.x[a] = blk.x[a].nodes[0];
    }
    while (true) {
      double w = wt;
      for (int a = 0; a < n_; ++a) w *= blk.x[a].weights[idx[a]];
      acc += f(index++, z, w);
      int a = n_ - 1;
      for (; a >= 0; --a) {
        if (++idx[a] < static_cast<int>(blk.x[a].size())) {
          z.x[a] = blk.x[a].nodes[idx[a]];
          break;
        }
        idx[a] = 0;
        z.x[a] = blk.x[a].nodes[0];
      }
      if (a < 0) break;
    }
    return acc;
  }

  int n_ = 0;
  bool radial_ = false;
  SpatialVector center_;
  std::vector<Block> blocks_;
  std::vector<Chunk> chunks_;
  std::size_t size_ = 0;
};

/// Rule over the QuadratureSpec region. Whitney layout: one block per dyadic layer
/// [2^j, 2^{j+1}] clipped to the region, spatial lattice of side 2^max(j, floor).
/// Graded layout: dyadic t layers and graded spatial panels around spec.center.
/// With a radial center (and spec.exploit_radial), the spatial part is the ball
/// |x - c| <= x_max in polar form.
HalfSpaceRule make_rule(const QuadratureSpec& spec, int n,
                        const std::optional<SpatialVector>& radial_center = std::nullopt);

/// Rule over the horizontal slice {t} x [-x_max, x_max]^n (or the radial ball),
/// graded around the center with innermost panel slice_h_factor * t.
HalfSpaceRule make_slice_rule(const QuadratureSpec& spec, int n, double t,
                              const std::optional<SpatialVector>& radial_center = std::nullopt);

/// Spatial-only rule (t fixed to 1, weight 1) graded with innermost panel h0.
HalfSpaceRule make_spatial_rule(const QuadratureSpec& spec, int n, double h0,
                                const std::optional<SpatialVector>& radial_center = std::nullopt);

/// Outer t rule on [t_min, t_max]: geometric panels of ratio spec.t_ratio.
AxisRule make_t_rule(const QuadratureSpec& spec);

}  // namespace hfs
