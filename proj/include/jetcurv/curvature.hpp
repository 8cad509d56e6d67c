#pragma once

#include "jetcurv/jetbundle.hpp"

namespace jetcurv {

/// Coefficient of dconj(z) /\ dz in the Chern curvature dbar(h^{-1} dh) at a point.
struct CurvatureForm {
  Complex center;
  Matrix theta;
  /// Relative disagreement of the two internal routes, when one was run.
  double route_discrepancy = 0.0;

  int rank() const { return static_cast<int>(theta.rows()); }
};

/// Curvature of the metric jet at its center: h^{-1}(dbar d h - dbar h h^{-1} d h).
/// Requires bi-order at least (1, 1) and a positive definite constant term.
CurvatureForm curvature(const MatrixJet& hjet);

/// Line-bundle curvature dbar d log h at the center, via the jet logarithm.
double curvature_log_line(const Jet& hjet);

/**
 * Gram matrix h_k of the wedge vectors F_i^k (the full lower-order jet frame
 * wedged with the k-th derivative of the i-th section), computed as bordered
 * determinants of derivative inner products.  With jet_order > 0 the entries
 * are computed in the jet ring so that h_k carries its own derivatives.
 */
struct WedgeGram {
  int k;
  MatrixJet gram;  // rank n, bi-order (jet_order, jet_order)

  Matrix value() const { return gram.at(0, 0); }
};

WedgeGram wedge_gram(const MatrixJet& hjet, int k, int jet_order = 0);

/**
 * Curvature of the order-k jet bundle, rank (k+1)n.  Computed two ways and
 * cross-checked: (a) the general curvature formula applied to the jet-valued
 * jet metric, and (b) the block formula
 * (det J_k h)^{-1} (J_k h)^{-1} [[0, 0], [0, h_{k+1}]].
 * Returns route (a); throws InternalInconsistency if the routes differ by
 * more than 1e-7 relative.
 */
CurvatureForm jet_curvature(const MatrixJet& hjet, int k);

/// As jet_curvature, but reports the route discrepancy instead of enforcing it.
CurvatureForm jet_curvature_unchecked(const MatrixJet& hjet, int k);

/**
 * Curvature of the determinant bundle of the order-k jet of a line bundle:
 * det J_{k-1} h * det J_{k+1} h / (det J_k h)^2, with det J_{-1} h := 1.
 * Cross-checked against dbar d log det J_k h to 1e-9 relative.
 */
double det_bundle_curvature(const MatrixJet& hjet, int k);

struct DetBundleCurvature {
  double value;      // minors formula
  double log_route;  // dbar d log det J_k h via the jet ring
  double residual;   // relative disagreement
};

/// Both det-bundle curvature routes, without the consistency enforcement.
DetBundleCurvature det_bundle_curvature_routes(const MatrixJet& hjet, int k);

/// Jet of the quotient metric of J_k / J_{k-1}: h_k / det J_{k-1} h.
MatrixJet quotient_metric(const MatrixJet& hjet, int k, int jet_order = 1);

/// Curvature of the quotient bundle J_k / J_{k-1} at the center.
Matrix quotient_curvature(const MatrixJet& hjet, int k);

/**
 * Frobenius norm of
 *   (trace (x) Id)(K_{J_k}) - (trace (x) Id)(K_{J_{k-1}}) - K_{J_k / J_{k-1}},
 * the three terms computed by independent routes.
 */
double trace_formula_residual(const MatrixJet& hjet, int k);

/// Metric in m <= 2 complex variables: Kronecker product of one model per variable.
class ProductMetric {
 public:
  explicit ProductMetric(std::vector<MetricModel> factors);

  int vars() const { return static_cast<int>(factors_.size()); }
  int rank() const { return rank_; }
  const MetricModel& factor(int i) const { return factors_[static_cast<size_t>(i)]; }

 private:
  std::vector<MetricModel> factors_;
  int rank_;
};

struct MultiCurvature {
  int vars;
  int rank;
  std::vector<Matrix> theta;  // entry (i, j) at index i * vars + j
  double route_discrepancy = 0.0;

  const Matrix& operator()(int i, int j) const { return theta[static_cast<size_t>(i * vars + j)]; }
};

/**
 * Curvature form coefficients of a product metric over C^m, m <= 2: entry
 * (i, j) is h^{-1}(dbar_j d_i h - dbar_j h h^{-1} d_i h), cross-checked
 * against the bordered-Gram route (det h)^{-1} h^{-1} h_{ij}.
 */
MultiCurvature curvature_multivar(const ProductMetric& metric, const std::vector<Complex>& point);

// Model-level wrappers; each lifts once at the policy order and feeds the jet ops.
CurvatureForm curvature_at(const MetricModel& model, Complex z0);
CurvatureForm jet_curvature_at(const MetricModel& model, Complex z0, int k);
double det_bundle_curvature_at(const MetricModel& model, Complex z0, int k);
Matrix quotient_curvature_at(const MetricModel& model, Complex z0, int k);
double trace_formula_residual_at(const MetricModel& model, Complex z0, int k);

}  // namespace jetcurv
