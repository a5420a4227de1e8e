#pragma once

#include "hfs/field.hpp"
#include "hfs/norms.hpp"
#include "hfs/quadrature.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hfs {

/// Flattened quadrature rule: nodes and weights in node-index order.
struct NodeSet {
  std::vector<Point> z;
  std::vector<double> w;

  std::size_t size() const { return z.size(); }
};

NodeSet collect_nodes(const HalfSpaceRule& rule);

/// z -> F(z, ..., z). For m = 1 this is F itself.
HarmonicField trace(const MultiVarField& F);

/// (z_1, ..., z_m) -> integral Q_k((z_1 + ... + z_m)/m, w) g(w) s^k dw over the rule of `quad`
/// (graded around quad.center when quad.layout is graded). When the A^infty weight of g is
/// declared, k > lambda - 1 is required. Throws std::invalid_argument otherwise or for k < 0.
MultiVarField extend(const HarmonicField& g, int m, int k, const QuadratureSpec& quad,
                     std::optional<double> declared_lambda = std::nullopt);

/// (S_{a,b} f)(z_1..z_m) = prod t_j^{a_j} integral f(w) s^{-n-1+sum b} / prod |z_j - w̄|^{a_j+b_j} dw.
/// Throws when a and b differ in length or are empty.
MultiVarField s_ab(const HarmonicField& f, std::span<const double> a, std::span<const double> b,
                   const QuadratureSpec& quad);

/// Both sides of the weighted product-space bound for S_{a,b} with m = 2:
/// lhs = integral integral |S_{a,b} f(z_1, z_2)|^p dm_{s_1}(z_1) dm_{s_2}(z_2),
/// rhs = ||f||^p in A^p_lambda, lambda = (n + 1) + s_1 + s_2.
/// The double integral is evaluated as a matrix product over the two outer rules.
struct RatioReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};
RatioReport s_ab_bound_check(const HarmonicField& f, std::span<const double> a,
                             std::span<const double> b, std::span<const double> s, double p,
                             const QuadratureSpec& outer, const QuadratureSpec& inner);

/// lhs = integral |F(z,...,z)|^p dm_lambda, rhs = integral |F|^p dm_{s_1}...dm_{s_m},
/// lambda = (m-1)(n+1) + sum s. Product fields use Fubini on the right-hand side; other
/// fields need m <= 2 (brute force over the rule). ratio is 0 when rhs vanishes.
RatioReport lemma7_check(const MultiVarField& F, double p, std::span<const double> s,
                         const QuadratureSpec& quad);

/// |f(z)| t^lambda >= eps.
bool v_set_member(const HarmonicField& f, double eps, double lambda, const Point& z);

/// f_1 = integral over the complement of V_{eps,lambda} of f(w) Q_m(z, w) s^m dw, f_2 over V.
struct SplitResult {
  HarmonicField f1;
  HarmonicField f2;
  std::size_t nodes_in_v = 0;
  std::size_t nodes_total = 0;
};
/// Requires m_order > max(lambda - 1, alpha / p) given as `m_floor`; throws otherwise.
SplitResult distance_split(const HarmonicField& f, double eps, double lambda, int m_order,
                           double m_floor, const QuadratureSpec& quad);

/// One step of the finiteness scan: the truncated double integral on successively doubled regions.
struct D2Step {
  double eps = 0.0;
  std::vector<double> integrals;  ///< one per region in the doubling sequence
  double growth = 0.0;            ///< last integral / previous one
  bool divergent = false;
};

struct D2Estimate {
  double value = 0.0;  ///< smallest grid eps classified finite (0 if none)
  bool found = false;
  std::vector<D2Step> trace;
};

/// For each eps of the decreasing grid, evaluates
///   I(R) = integral_R (integral_{V_eps ∩ R} |Q_m(z,w)| s^{m - lambda} dw)^p t^alpha dz,
/// lambda = (alpha + n + 1)/p, on quad.region and `doublings` successive doublings. eps is
/// divergent when I grows by >= growth_threshold over the last doubling. The scan stops at the
/// first divergent eps.
D2Estimate d2_estimate(const HarmonicField& f, std::span<const double> eps_grid, double p,
                       double alpha, int m_order, const QuadratureSpec& quad, int doublings = 3,
                       double growth_threshold = 1.2);

/// Upper bound for the A^infty_lambda distance of f to the span of a dictionary of fields:
/// least-squares fit of t^lambda (f - sum c_j phi_j) on the sample points, then the sup of the
/// residual over `spec`.
struct DictionaryFit {
  std::vector<double> coeffs;
  double sup_residual = 0.0;
};
DictionaryFit dictionary_distance(const HarmonicField& f, std::span<const HarmonicField> dictionary,
                                  double lambda, const SampleSpec& spec);

}  // namespace hfs
