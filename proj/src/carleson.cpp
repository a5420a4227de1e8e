#include "hfs/carleson.hpp"

#include "hfs/kernels.hpp"
#include "hfs/norms.hpp"
#include "hfs/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace hfs {

namespace {

using CubeKey = std::vector<std::int64_t>;

CubeKey key_of(const WhitneyCube& c) {
  CubeKey k{c.level};
  for (int i = 0; i < c.dim(); ++i) k.push_back(c.index[i]);
  return k;
}

// Keys of all layered cubes whose closure contains z.
std::vector<CubeKey> closed_keys(const Point& z) {
  const WhitneyCube home = cube_containing(z);
  const int n = z.dim();
  std::vector<int> levels{home.level};
  if (z.t == std::ldexp(1.0, home.level)) levels.push_back(home.level - 1);
  std::vector<CubeKey> out;
  for (int level : levels) {
    const double h = std::ldexp(1.0, level);
    std::vector<std::vector<std::int64_t>> options(n);
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::int64_t>(std::floor(z.x[i] / h));
      options[i].push_back(k);
      if (z.x[i] == static_cast<double>(k) * h) options[i].push_back(k - 1);
    }
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      CubeKey key{level};
      for (int i = 0; i < n; ++i) key.push_back(options[i][pick[i]]);
      out.push_back(std::move(key));
      int a = n - 1;
      for (; a >= 0; --a) {
        if (++pick[a] < options[a].size()) break;
        pick[a] = 0;
      }
      if (a < 0) break;
    }
  }
  return out;
}

}  // namespace

void AtomicMeasure::add(const Point& z, double weight) {
  if (!(weight > 0.0)) throw std::invalid_argument("AtomicMeasure: weights must be positive");
  if (!(z.t > 0.0)) throw std::invalid_argument("AtomicMeasure: atoms must lie in the half-space");
  if (z.dim() != n) throw std::invalid_argument("AtomicMeasure: dimension mismatch");
  atoms.push_back({z, weight});
}

double AtomicMeasure::total_mass() const {
  double m = 0.0;
  for (const Atom& a : atoms) m += a.weight;
  return m;
}

double AtomicMeasure::mass(const Box& box) const {
  double m = 0.0;
  for (const Atom& a : atoms)
    if (box.contains(a.z)) m += a.weight;
  return m;
}

AtomicMeasure AtomicMeasure::dilated(double k, double sigma) const {
  AtomicMeasure out{n, {}};
  out.atoms.reserve(atoms.size());
  const double scale = std::pow(k, sigma);
  for (const Atom& a : atoms) {
    Point z = a.z;
    z.x *= k;
    z.t *= k;
    out.atoms.push_back({z, a.weight * scale});
  }
  return out;
}

std::vector<double> cube_masses(const AtomicMeasure& mu, std::span<const WhitneyCube> cubes) {
  std::map<CubeKey, std::size_t> lookup;
  for (std::size_t i = 0; i < cubes.size(); ++i) lookup.emplace(key_of(cubes[i]), i);
  std::vector<double> mass(cubes.size(), 0.0);
  for (const Atom& a : mu.atoms)
    for (const CubeKey& k : closed_keys(a.z)) {
      auto it = lookup.find(k);
      if (it != lookup.end()) mass[it->second] += a.weight;
    }
  return mass;
}

CarlesonReport carleson_report(const AtomicMeasure& mu, std::span<const WhitneyCube> cubes,
                               const std::function<double(const WhitneyCube&)>& scale) {
  const std::vector<double> mass = cube_masses(mu, cubes);
  CarlesonReport r;
  r.rows.reserve(cubes.size());
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    const double ratio = mass[i] / scale(cubes[i]);
    r.rows.push_back({cubes[i], mass[i], ratio});
    if (ratio > r.sup) {
      r.sup = ratio;
      r.argmax = cubes[i].id();
    }
  }
  return r;
}

CarlesonReport carleson_constant_T2(const AtomicMeasure& mu, std::span<const WhitneyCube> cubes,
                                    int m, std::span<const double> s) {
  if (m < 1 || static_cast<int>(s.size()) != m)
    throw std::invalid_argument("carleson_constant_T2: need m >= 1 weights");
  double total = 0.0;
  for (double sj : s) {
    if (!(sj > -1.0)) throw std::invalid_argument("carleson_constant_T2: weights must exceed -1");
    total += sj;
  }
  const double e = m + total / (mu.n + 1.0);
  return carleson_report(mu, cubes, [e](const WhitneyCube& c) { return std::pow(c.volume(), e); });
}

CarlesonReport carleson_constant_C1(const AtomicMeasure& mu, std::span<const WhitneyCube> cubes,
                                    double alpha) {
  const double s[] = {alpha};
  return carleson_constant_T2(mu, cubes, 1, s);
}

CarlesonReport carleson_constant_T3(const AtomicMeasure& mu, std::span<const WhitneyCube> cubes,
                                    double p, double q, double alpha) {
  if (!(p > 0.0 && p <= q)) throw std::invalid_argument("carleson_constant_T3: need 0 < p <= q");
  if (!(alpha > 0.0)) throw std::invalid_argument("carleson_constant_T3: alpha must be positive");
  const double e = mu.n * q / p + alpha * q;
  return carleson_report(mu, cubes, [e](const WhitneyCube& c) { return std::pow(c.eta(), e); });
}

CarlesonReport carleson_constant_T4(const AtomicMeasure& mu, std::span<const WhitneyCube> cubes,
                                    double p, double alpha) {
  if (!(p > 0.0)) throw std::invalid_argument("carleson_constant_T4: p must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("carleson_constant_T4: alpha must be positive");
  const double e = mu.n + alpha * p;
  return carleson_report(mu, cubes, [e](const WhitneyCube& c) { return std::pow(c.eta(), e); });
}

Box qw_cube(const Point& w) {
  const int n = w.dim();
  Box b;
  b.lo.resize(n + 1);
  b.hi.resize(n + 1);
  const double h = 0.5 * w.t;
  for (int i = 0; i < n; ++i) {
    b.lo[i] = w.x[i] - h;
    b.hi[i] = w.x[i] + h;
  }
  b.lo[n] = w.t - h;
  b.hi[n] = w.t + h;
  return b;
}

double tw_mass(const AtomicMeasure& mu, const Point& w, int l, double delta) {
  const Box q = qw_cube(w);
  double m = 0.0;
  for (const Atom& a : mu.atoms)
    if (q.contains(a.z) && tw_set_indicator(w, l, delta, a.z)) m += a.weight;
  return m;
}

std::vector<Point> lemma6_family(const Point& w) {
  const int n = w.dim();
  const Box q = qw_cube(w);
  std::vector<Point> out;
  for (double sp : {0.5 * w.t, w.t, 2.0 * w.t}) {
    if (!(sp + 0.5 * sp > q.lo[n] && sp - 0.5 * sp < q.hi[n])) continue;
    const double step = 0.25 * sp;
    std::vector<std::int64_t> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = static_cast<std::int64_t>(std::floor((q.lo[i] - 0.5 * sp) / step));
      hi[i] = static_cast<std::int64_t>(std::ceil((q.hi[i] + 0.5 * sp) / step));
    }
    std::vector<std::int64_t> k = lo;
    while (true) {
      Point c = origin_point(n, sp);
      bool meets = true;
      for (int i = 0; i < n; ++i) {
        c.x[i] = static_cast<double>(k[i]) * step;
        if (!(c.x[i] + 0.5 * sp > q.lo[i] && c.x[i] - 0.5 * sp < q.hi[i])) meets = false;
      }
      if (meets) out.push_back(c);
      int a = n - 1;
      for (; a >= 0; --a) {
        if (++k[a] <= hi[a]) break;
        k[a] = lo[a];
      }
      if (a < 0) break;
    }
  }
  return out;
}

CoverCheck lemma6_cover_check(const Point& w, int l, double delta, int samples, std::uint64_t seed) {
  const int n = w.dim();
  const Box q = qw_cube(w);
  const std::vector<Point> family = lemma6_family(w);
  std::vector<Box> boxes;
  for (const Point& c : family) boxes.push_back(qw_cube(c));
  CoverCheck r;
  r.samples = samples;
  r.family_size = static_cast<int>(family.size());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Point z = origin_point(n, 1.0);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) z.x[i] = q.lo[i] + (q.hi[i] - q.lo[i]) * u(rng);
    z.t = q.lo[n] + (q.hi[n] - q.lo[n]) * u(rng);
    bool hit = false;
    for (std::size_t j = 0; j < family.size() && !hit; ++j)
      hit = boxes[j].contains_interior(z) && tw_set_indicator(family[j], l, delta, z);
    if (!hit) ++r.uncovered;
  }
  return r;
}

AtomicMeasure discretize_weighted_volume(std::span<const WhitneyCube> cubes, double lambda) {
  if (cubes.empty()) return {};
  AtomicMeasure mu{cubes.front().dim(), {}};
  for (const WhitneyCube& c : cubes) mu.add(c.center(), weighted_measure(c, lambda));
  return mu;
}

AtomicMeasure discretize_density(std::span<const WhitneyCube> cubes,
                                 const std::function<double(const Point&)>& density, int order) {
  if (cubes.empty()) return {};
  AtomicMeasure mu{cubes.front().dim(), {}};
  for (const WhitneyCube& c : cubes) {
    const double m = integrate_box(c.box(), order, density);
    if (m > 0.0) mu.add(c.center(), m);
  }
  return mu;
}

EmbeddingResult embedding_ratio(const AtomicMeasure& mu, std::span<const FamilyMember> family,
                                double p) {
  if (!(p > 0.0)) throw std::invalid_argument("embedding_ratio: p must be positive");
  for (const FamilyMember& f : family)
    if (!(f.norm_p > 0.0)) throw std::invalid_argument("embedding_ratio: member '" + f.id + "' has zero norm");
  EmbeddingResult r;
  r.ratios.resize(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    const FamilyMember& f = family[k];
    const double lhs = ordered_sum(mu.atoms.size(), [&](std::size_t i) {
      const Atom& a = mu.atoms[i];
      double v = 1.0;
      for (const HarmonicField& g : f.factors) v *= std::abs(g(a.z));
      return a.weight * std::pow(v, p);
    });
    r.ratios[k] = lhs / f.norm_p;
    if (r.ratios[k] > r.sup) {
      r.sup = r.ratios[k];
      r.argmax = f.id;
    }
  }
  return r;
}

double sequence_growth(std::span<const double> values) {
  auto first = std::find_if(values.begin(), values.end(), [](double v) { return v != 0.0; });
  if (first == values.end()) return 0.0;
  return *std::max_element(values.begin(), values.end()) / *first;
}

}  // namespace hfs
