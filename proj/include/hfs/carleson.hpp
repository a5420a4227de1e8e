#pragma once

#include "hfs/field.hpp"
#include "hfs/geometry.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hfs {

struct Atom {
  Point z;
  double weight = 0.0;
};

/// Finite sum of weighted point masses on the half-space.
struct AtomicMeasure {
  int n = 1;
  std::vector<Atom> atoms;

  /// Throws std::invalid_argument unless weight > 0, t > 0 and dimensions match.
  void add(const Point& z, double weight);
  double total_mass() const;
  /// Mass of the closed box.
  double mass(const Box& box) const;
  /// Atoms scaled by (x, t) -> (k x, k t), weights by k^sigma.
  AtomicMeasure dilated(double k, double sigma) const;
};

/// Mass of every cube (closed membership: an atom on a shared face counts for each cube).
std::vector<double> cube_masses(const AtomicMeasure& mu, std::span<const WhitneyCube> cubes);

struct CarlesonRow {
  WhitneyCube cube;
  double mass = 0.0;
  double ratio = 0.0;
};

struct CarlesonReport {
  std::vector<CarlesonRow> rows;
  double sup = 0.0;
  std::string argmax;  ///< id of the maximizing cube ("" when all ratios vanish)
};

/// ratio_k = mu(cube_k) / scale(cube_k).
CarlesonReport carleson_report(const AtomicMeasure& mu, std::span<const WhitneyCube> cubes,
                               const std::function<double(const WhitneyCube&)>& scale);

/// mu(cube) / |cube|^{m + sum(s)/(n+1)}. Throws unless every s_j > -1.
CarlesonReport carleson_constant_T2(const AtomicMeasure& mu, std::span<const WhitneyCube> cubes,
                                    int m, std::span<const double> s);
/// mu(cube) / |cube|^{1 + alpha/(n+1)}. Throws for alpha <= -1.
CarlesonReport carleson_constant_C1(const AtomicMeasure& mu, std::span<const WhitneyCube> cubes,
                                    double alpha);
/// mu(cube) / eta^{n q/p + alpha q}. Throws unless 0 < p <= q and alpha > 0.
CarlesonReport carleson_constant_T3(const AtomicMeasure& mu, std::span<const WhitneyCube> cubes,
                                    double p, double q, double alpha);
/// mu(cube) / eta^{n + alpha p}. Throws unless p > 0 and alpha > 0.
CarlesonReport carleson_constant_T4(const AtomicMeasure& mu, std::span<const WhitneyCube> cubes,
                                    double p, double alpha);

/// Closed cube centered at w = (y, s) with side s.
Box qw_cube(const Point& w);
/// Mass of the atoms z in Q_w with |P_l(u(z))| > delta.
double tw_mass(const AtomicMeasure& mu, const Point& w, int l, double delta);

/// Monte-Carlo check that Q_w is covered by the open sets T_{w'}° = T_{w'} ∩ int Q_{w'}
/// for w' = (y', s') with s' in {s/2, s, 2s} and y' on the lattice (s'/4) Z^n.
struct CoverCheck {
  int samples = 0;
  int uncovered = 0;
  int family_size = 0;  ///< number of w' whose cube interior meets Q_w
  bool covered() const { return uncovered == 0; }
};
CoverCheck lemma6_cover_check(const Point& w, int l, double delta, int samples, std::uint64_t seed);

/// Members w' of the covering family whose open cube meets Q_w.
std::vector<Point> lemma6_family(const Point& w);

/// Atoms at the centers of the cubes with mass m_lambda(cube) (exact), i.e. the cube-wise
/// discretization of t^lambda dx dt.
AtomicMeasure discretize_weighted_volume(std::span<const WhitneyCube> cubes, double lambda);
/// Atoms at the cube centers carrying the Gauss-Legendre integral of the density over each cube.
AtomicMeasure discretize_density(std::span<const WhitneyCube> cubes,
                                 const std::function<double(const Point&)>& density, int order = 4);

/// One member of an embedding test family: a product of fields and the declared value of
/// prod_j ||f_j||^p in the source space.
struct FamilyMember {
  std::string id;
  std::vector<HarmonicField> factors;
  double norm_p = 0.0;
};

struct EmbeddingResult {
  double sup = 0.0;
  std::string argmax;
  std::vector<double> ratios;
};

/// ratio = integral prod_j |f_j|^p dmu / norm_p for each member, and their sup.
/// Throws std::invalid_argument for a member with norm_p <= 0.
EmbeddingResult embedding_ratio(const AtomicMeasure& mu, std::span<const FamilyMember> family,
                                double p);

/// max(values) / (first nonzero value); 0 when all values vanish.
double sequence_growth(std::span<const double> values);

}  // namespace hfs
