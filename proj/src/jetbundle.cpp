#include "jetcurv/jetbundle.hpp"

#include <sstream>

namespace jetcurv {

Matrix jet_metric_value(const MatrixJet& hjet, int k) {
  if (k < 0) throw OrderRange("jet metric order must be nonnegative");
  if (!hjet.order().covers({k, k}))
    throw OrderRange("jet_metric: lift bi-order too small for k");
  const int n = hjet.rank();
  Matrix m((k + 1) * n, (k + 1) * n);
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j) m.block(i * n, j * n, n, n) = hjet.partial(j, i);
  return hermitized(m);
}

Matrix jet_metric(const MatrixJet& hjet, int k) {
  Matrix m = jet_metric_value(hjet, k);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(hi > 0.0) || lo < kJetMetricEigenFloor * hi) {
    std::ostringstream os;
    os << "jet metric of order k=" << k << " at z0=(" << hjet.center().real() << ","
       << hjet.center().imag() << ") is not positive definite (model not k-nondegenerate); "
       << "eigenvalue range [" << lo << ", " << hi << "]";
    throw DegenerateJetMetric(os.str());
  }
  return m;
}

MatrixJet jet_metric_jet(const MatrixJet& hjet, int k, BiOrder sub) {
  if (k < 0) throw OrderRange("jet metric order must be nonnegative");
  if (!hjet.order().covers({k + sub.p, k + sub.q}))
    throw OrderRange("jet_metric_jet: lift bi-order too small for k");
  const int n = hjet.rank();
  MatrixJet big(hjet.center(), sub, (k + 1) * n);
  for (int p = 0; p <= sub.p; ++p)
    for (int q = 0; q <= sub.q; ++q) {
      Matrix& coeff = big.at(p, q);
      for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j)
          coeff.block(i * n, j * n, n, n) =
              rising_factorial_ratio(p, j) * rising_factorial_ratio(q, i) * hjet.at(p + j, q + i);
    }
  return big;
}

Matrix frame_jet(const HoloFrame& A, Complex z0, int k) {
  const int n = A.rank();
  Matrix m = Matrix::Zero((k + 1) * n, (k + 1) * n);
  for (int j = 0; j <= k; ++j)
    for (int i = 0; i <= j; ++i)
      m.block(i * n, j * n, n, n) = binomial(j, j - i) * A.derivative_at(z0, j - i);
  return m;
}

double frame_change_residual(const MetricModel& model, const HoloFrame& A, Complex z0, int k) {
  const MatrixJet hjet = model.lift(z0, {k, k});
  const MatrixJet tjet = model.frame_transform(A).lift(z0, {k, k});
  const Matrix jk = jet_metric_value(hjet, k);
  const Matrix jt = jet_metric_value(tjet, k);
  const Matrix ja = frame_jet(A, z0, k);
  return (jt - ja.adjoint() * jk * ja).norm();
}

Matrix partial_trace(const Matrix& m, int n) {
  if (m.rows() != m.cols()) throw FrameMismatch("partial_trace: matrix must be square");
  if (n < 1 || m.rows() % n != 0)
    throw FrameMismatch("partial_trace: dimension not divisible by block size");
  const int blocks = static_cast<int>(m.rows()) / n;
  Matrix acc = Matrix::Zero(n, n);
  for (int b = 0; b < blocks; ++b) acc += m.block(b * n, b * n, n, n);
  return acc;
}

}  // namespace jetcurv
