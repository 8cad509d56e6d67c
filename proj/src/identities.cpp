#include "jetcurv/identities.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace jetcurv {

namespace {

Matrix minor_of(const Matrix& a, int row, int col) {
  const int n = static_cast<int>(a.rows());
  Matrix m(n - 1, n - 1);
  for (int i = 0, mi = 0; i < n; ++i) {
    if (i == row) continue;
    for (int j = 0, mj = 0; j < n; ++j) {
      if (j == col) continue;
      m(mi, mj) = a(i, j);
      ++mj;
    }
    ++mi;
  }
  return m;
}

std::string matrix_witness(const Matrix& a) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < a.rows(); ++i) {
    os << (i ? ";" : "") << "[";
    for (int j = 0; j < a.cols(); ++j)
      os << (j ? "," : "") << a(i, j).real() << (a(i, j).imag() < 0 ? "" : "+") << a(i, j).imag()
         << "i";
    os << "]";
  }
  os << "]";
  return os.str();
}

IdentityVerdict finish(std::string name, double residual, double tol,
                       const std::function<std::string()>& witness) {
  IdentityVerdict v;
  v.name = std::move(name);
  v.residual = residual;
  v.tolerance = tol;
  v.pass = residual <= tol;
  if (!v.pass) v.witness = witness();
  return v;
}

double real_det(const Matrix& m) { return Complex(m.determinant()).real(); }

}  // namespace

IdentityVerdict desnanot_jacobi(const Matrix& a, double tol) {
  const int n = static_cast<int>(a.rows());
  if (n < 2 || a.cols() != n) throw Error("desnanot_jacobi: square matrix of size >= 2 required");

  const Complex m_nn = minor_of(a, n - 1, n - 1).determinant();
  const Complex m_pp = minor_of(a, n - 2, n - 2).determinant();
  const Complex m_np = minor_of(a, n - 1, n - 2).determinant();
  const Complex m_pn = minor_of(a, n - 2, n - 1).determinant();
  const Complex det_b = (n == 2) ? Complex(1.0) : a.topLeftCorner(n - 2, n - 2).determinant();
  const Complex lhs = m_nn * m_pp - m_np * m_pn;
  const Complex rhs = det_b * Complex(a.determinant());

  return finish("desnanot_jacobi", rel_residual(lhs, rhs), tol, [&] { return matrix_witness(a); });
}

IdentityVerdict gram_quotient_check(const Matrix& g, int r, double tol) {
  const int n = static_cast<int>(g.rows());
  if (g.cols() != n) throw Error("gram_quotient_check: square Gram matrix required");
  if (r < 1 || r >= n) throw Error("gram_quotient_check: need 1 <= r < n");

  const Matrix lead = hermitized(g.topLeftCorner(r, r));
  Eigen::LLT<Matrix> llt(lead);
  if (llt.info() != Eigen::Success)
    throw DegenerateMetric("gram_quotient_check: leading block not positive definite");

  const int q = n - r;
  Matrix a_sigma(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      Matrix bordered(r + 1, r + 1);
      bordered.topLeftCorner(r, r) = g.topLeftCorner(r, r);
      for (int b = 0; b < r; ++b) bordered(r, b) = g(r + i, b);
      for (int a = 0; a < r; ++a) bordered(a, r) = g(a, r + j);
      bordered(r, r) = g(r + i, r + j);
      a_sigma(i, j) = bordered.determinant();
    }

  const Complex lhs = g.determinant();
  const Complex rhs = Complex(a_sigma.determinant()) / std::pow(real_det(lead), n - r - 1);
  return finish("gram_quotient", rel_residual(lhs, rhs), tol, [&] { return matrix_witness(g); });
}

IdentityVerdict det_recursion_check(const MetricModel& model, Complex z0, int k, double tol) {
  if (k < 0) throw OrderRange("det_recursion_check: k must be nonnegative");
  const MatrixJet hjet = model.lift(z0, lift_order(k));
  const int n = model.rank();

  std::vector<double> det_j(static_cast<size_t>(k) + 1), det_h(static_cast<size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) {
    det_j[static_cast<size_t>(j)] = real_det(jet_metric(hjet, j));
    det_h[static_cast<size_t>(j)] = real_det(wedge_gram(hjet, j, 0).value());
  }

  const double det_jkm1 = (k == 0) ? 1.0 : det_j[static_cast<size_t>(k) - 1];
  const double rhs = std::pow(det_jkm1, 1 - n) * det_h[static_cast<size_t>(k)];
  double residual = rel_residual(det_j[static_cast<size_t>(k)], rhs);

  if (k >= 1) {
    // Telescoped product form of (det J_k)^{-1} det J_{k-1}.
    double rhs2 = 1.0 / det_h[static_cast<size_t>(k)];
    for (int j = 0; j < k; ++j)
      rhs2 *= std::pow(det_h[static_cast<size_t>(j)], n * std::pow(1.0 - n, k - 1 - j));
    const double lhs2 = det_jkm1 / det_j[static_cast<size_t>(k)];
    residual = std::max(residual, rel_residual(lhs2, rhs2));
  }

  return finish("det_recursion", residual, tol, [&] {
    std::ostringstream os;
    os << "k=" << k << " z0=(" << z0.real() << "," << z0.imag() << ")";
    return os.str();
  });
}

EquivalenceVerdict line_equiv_test(const MetricModel& m1, const MetricModel& m2,
                                   std::span<const Complex> grid, double tol) {
  if (m1.rank() != 1 || m2.rank() != 1)
    throw Error("line_equiv_test: both models must have rank 1");
  EquivalenceVerdict v;
  for (const Complex z : grid) {
    const double t1 = curvature_at(m1, z).theta(0, 0).real();
    const double t2 = curvature_at(m2, z).theta(0, 0).real();
    const double dev = std::abs(t1 - t2);
    if (dev > v.max_deviation) {
      v.max_deviation = dev;
      v.argmax = z;
    }
  }
  v.equivalent = v.max_deviation <= tol;
  return v;
}

EquivalenceVerdict det_bundle_equiv_test(const MetricModel& m1, const MetricModel& m2, int k,
                                         std::span<const Complex> grid, double tol) {
  if (m1.rank() != 1 || m2.rank() != 1)
    throw Error("det_bundle_equiv_test: both models must have rank 1");
  if (k < 0) throw OrderRange("det_bundle_equiv_test: k must be nonnegative");

  EquivalenceVerdict v;
  for (const Complex z : grid) {
    const MatrixJet h1 = m1.lift(z, lift_order(k + 1));
    const MatrixJet h2 = m2.lift(z, lift_order(k + 1));
    for (int j = k; j <= k + 1; ++j) {
      const double dev = std::abs(det_bundle_curvature(h1, j) - det_bundle_curvature(h2, j));
      if (dev > v.max_deviation) {
        v.max_deviation = dev;
        v.argmax = z;
      }
    }
  }
  v.equivalent = v.max_deviation <= tol;

  // The paper's corollary makes this a biconditional with line equivalence.
  const EquivalenceVerdict line = line_equiv_test(m1, m2, grid, tol);
  if (line.equivalent != v.equivalent)
    throw InternalInconsistency(
        "det_bundle_equiv_test: det-bundle and line-bundle verdicts disagree");
  return v;
}

DescentReport jet_descent_check(const MetricModel& m1, const MetricModel& m2, int k,
                                std::span<const Complex> grid, double tol) {
  if (m1.rank() != 1 || m2.rank() != 1)
    throw Error("jet_descent_check: both models must have rank 1");
  DescentReport report;
  report.agrees.assign(static_cast<size_t>(k) + 1, 1);

  for (const Complex z : grid) {
    const MatrixJet h1 = m1.lift(z, lift_order(k));
    const MatrixJet h2 = m2.lift(z, lift_order(k));
    for (int j = 0; j <= k; ++j) {
      const double k1 = curvature_log_line(jet_metric_jet(h1, j, {1, 1}).det());
      const double k2 = curvature_log_line(jet_metric_jet(h2, j, {1, 1}).det());
      if (std::abs(k1 - k2) > tol) report.agrees[static_cast<size_t>(j)] = 0;
    }
  }

  for (int j = 0; j <= k; ++j)
    if (!report.agrees[static_cast<size_t>(j)]) {
      report.first_disagreement = j;
      break;
    }
  for (int j = 1; j <= k; ++j)
    if (report.agrees[static_cast<size_t>(j)] && !report.agrees[static_cast<size_t>(j) - 1])
      report.chain_consistent = false;
  return report;
}

}  // namespace jetcurv
