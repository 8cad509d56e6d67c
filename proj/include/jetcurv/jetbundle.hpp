#pragma once

#include "jetcurv/models.hpp"

namespace jetcurv {

/// Relative eigenvalue floor below which a jet metric counts as degenerate.
inline constexpr double kJetMetricEigenFloor = 1e-10;

/**
 * Value of the order-k jet metric at the jet's center: the (k+1)n x (k+1)n
 * Hermitian matrix whose (i, j) block (row block i, column block j) is
 * d^{i+j} h / dz^j dconj(z)^i.  No definiteness check; see jet_metric.
 */
Matrix jet_metric_value(const MatrixJet& hjet, int k);

/// As jet_metric_value, but verified positive definite (relative eigenvalue
/// floor kJetMetricEigenFloor); throws DegenerateJetMetric otherwise.
Matrix jet_metric(const MatrixJet& hjet, int k);

/**
 * Jet-valued jet metric: the rank-(k+1)n MatrixJet whose (i, j) block is the
 * shifted-derivative jet of h truncated to `sub`.  Its constant term equals
 * jet_metric_value(hjet, k).
 */
MatrixJet jet_metric_jet(const MatrixJet& hjet, int k, BiOrder sub = {2, 2});

/**
 * The block upper-triangular frame cocycle matrix of A at z0: block (i, j)
 * equals binom(j, j-i) A^{(j-i)}(z0) for j >= i.  Satisfies
 * frame_jet(A B) = frame_jet(A) frame_jet(B) and det = det(A(z0))^{k+1}.
 */
Matrix frame_jet(const HoloFrame& A, Complex z0, int k);

/**
 * Frobenius norm of J_k(h~)(z0) - frame_jet(A)^* J_k(h)(z0) frame_jet(A),
 * where h~ is the model conjugated by the frame A.  Zero (to rounding) by the
 * frame-change law of the jet metric.
 */
double frame_change_residual(const MetricModel& model, const HoloFrame& A, Complex z0, int k);

/// Sum of the diagonal n x n blocks of a square matrix (trace (x) Id).
Matrix partial_trace(const Matrix& m, int n);

}  // namespace jetcurv
