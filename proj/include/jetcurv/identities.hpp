#pragma once

#include <span>
#include <string>
#include <vector>

#include "jetcurv/curvature.hpp"

namespace jetcurv {

struct IdentityVerdict {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string witness;  // serialized inputs, set on failure only
};

/**
 * The two-minor determinant identity: for square A (size >= 2) and B the
 * matrix with the last two rows and columns removed,
 *   det(A with last row/col removed) det(A with second-to-last row/col removed)
 * - det(cross minors) = det(B) det(A).
 * Residual is relative on the scale 1 + |det(B) det(A)|.
 */
IdentityVerdict desnanot_jacobi(const Matrix& a, double tol = 1e-9);

/**
 * Bordered-Gram quotient identity: for a PSD Gram matrix G of a basis whose
 * first r vectors span the subspace, det G = det(A_sigma) / (det A)^{n-r-1},
 * where A is the leading r x r block and A_sigma the Gram matrix of the
 * wedge-extended vectors, built from bordered determinants of G.
 */
IdentityVerdict gram_quotient_check(const Matrix& g, int r, double tol = 1e-9);

/**
 * Determinant recursion det J_k h = (det J_{k-1} h)^{1-n} det h_k and its
 * telescoped product form, checked at a point with h_k from wedge_gram and
 * det J_j from the assembled jet metrics.
 */
IdentityVerdict det_recursion_check(const MetricModel& model, Complex z0, int k,
                                    double tol = 1e-9);

struct EquivalenceVerdict {
  bool equivalent = false;
  double max_deviation = 0.0;
  Complex argmax{0.0, 0.0};
};

/// Local equivalence test for two line-bundle metrics: curvatures compared on
/// a grid; EQUIVALENT means no obstruction found at this resolution/tolerance.
EquivalenceVerdict line_equiv_test(const MetricModel& m1, const MetricModel& m2,
                                   std::span<const Complex> grid, double tol);

/**
 * Determinant-bundle equivalence test: compares the det-bundle curvatures of
 * the order-k and order-(k+1) jets over the grid.  Also runs line_equiv_test
 * and throws InternalInconsistency if the two verdicts differ (they are
 * equivalent conditions).
 */
EquivalenceVerdict det_bundle_equiv_test(const MetricModel& m1, const MetricModel& m2, int k,
                                         std::span<const Complex> grid, double tol);

struct DescentReport {
  std::vector<char> agrees;      // per level j = 0..k
  int first_disagreement = -1;   // -1 when all levels agree
  bool chain_consistent = true;  // agreement at level j implies agreement at j-1
};

/// Scalar complete invariants K_{det J_j}, j = 0..k, compared level by level.
DescentReport jet_descent_check(const MetricModel& m1, const MetricModel& m2, int k,
                                std::span<const Complex> grid, double tol);

}  // namespace jetcurv
