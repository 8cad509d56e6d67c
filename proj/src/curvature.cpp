#include "jetcurv/curvature.hpp"

#include <cmath>

namespace jetcurv {

namespace {

constexpr double kRouteTol = 1e-7;
constexpr double kDetRouteTol = 1e-9;
constexpr double kMultiRouteTol = 1e-8;

Matrix pd_inverse(const Matrix& h, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(h));
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(hi > 0.0) || lo <= 0.0 || lo < 1e-14 * hi)
    throw DegenerateMetric(std::string(what) + ": constant term not positive definite");
  return hermitized(h).inverse();
}

double real_det(const Matrix& m) { return Complex(m.determinant()).real(); }

}  // namespace

CurvatureForm curvature(const MatrixJet& hjet) {
  if (!hjet.order().covers({1, 1})) throw OrderRange("curvature: bi-order must cover (1,1)");
  const Matrix hinv = pd_inverse(hjet.at(0, 0), "curvature");
  const Matrix dh = hjet.partial(1, 0);
  const Matrix dbarh = hjet.partial(0, 1);
  const Matrix ddbarh = hjet.partial(1, 1);
  CurvatureForm out;
  out.center = hjet.center();
  out.theta = hinv * (ddbarh - dbarh * hinv * dh);
  return out;
}

double curvature_log_line(const Jet& hjet) {
  if (!hjet.order().covers({1, 1}))
    throw OrderRange("curvature_log_line: bi-order must cover (1,1)");
  return log_jet(hjet).partial(1, 1).real();
}

WedgeGram wedge_gram(const MatrixJet& hjet, int k, int jet_order) {
  if (k < 0) throw OrderRange("wedge_gram: k must be nonnegative");
  const BiOrder sub{jet_order, jet_order};
  if (!hjet.order().covers({k + jet_order, k + jet_order}))
    throw OrderRange("wedge_gram: lift bi-order too small for k");

  if (k == 0) return WedgeGram{0, hjet.truncated(sub)};

  const int n = hjet.rank();
  const int N = n * k;

  // Row a of the bordered matrix is the a-th jet vector of F_j^k, column b the
  // b-th of F_i^k; the (a, b) inner product is d^{ra}_z d^{rb}_zbar h(m_b, m_a).
  auto deriv_order = [&](int a) { return a < N ? a / n : k; };
  auto section_index = [&](int a, int border) { return a < N ? a % n : border; };

  MatrixJet gram(hjet.center(), sub, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MatrixJet bordered(hjet.center(), sub, N + 1);
      for (int a = 0; a <= N; ++a)
        for (int b = 0; b <= N; ++b) {
          const int ra = deriv_order(a), ma = section_index(a, j);
          const int rb = deriv_order(b), mb = section_index(b, i);
          for (int p = 0; p <= sub.p; ++p)
            for (int q = 0; q <= sub.q; ++q)
              bordered.at(p, q)(a, b) = rising_factorial_ratio(p, ra) *
                                        rising_factorial_ratio(q, rb) *
                                        hjet.at(p + ra, q + rb)(mb, ma);
        }
      gram.set_entry(i, j, bordered.det());
    }
  return WedgeGram{k, gram};
}

CurvatureForm jet_curvature_unchecked(const MatrixJet& hjet, int k) {
  const int n = hjet.rank();
  const Matrix jk = jet_metric(hjet, k);  // throws DegenerateJetMetric when not PD

  CurvatureForm a = curvature(jet_metric_jet(hjet, k, {2, 2}));

  // Block-formula route: (det J_k)^{-1} (J_k)^{-1} [[0,0],[0,h_{k+1}]].
  const Matrix hk1 = wedge_gram(hjet, k + 1, 0).value();
  const int dim = (k + 1) * n;
  Matrix block = Matrix::Zero(dim, dim);
  block.bottomRightCorner(n, n) = hk1;
  const Matrix b = jk.inverse() * block / real_det(jk);

  a.route_discrepancy = (a.theta - b).norm() / (1.0 + b.norm());
  return a;
}

CurvatureForm jet_curvature(const MatrixJet& hjet, int k) {
  CurvatureForm a = jet_curvature_unchecked(hjet, k);
  if (a.route_discrepancy > kRouteTol)
    throw InternalInconsistency("jet_curvature: general and block routes disagree");
  return a;
}

DetBundleCurvature det_bundle_curvature_routes(const MatrixJet& hjet, int k) {
  if (hjet.rank() != 1)
    throw Error("det_bundle_curvature: defined for line-bundle metrics (rank 1)");
  if (k < 0) throw OrderRange("det_bundle_curvature: k must be nonnegative");

  const double det_km1 = (k == 0) ? 1.0 : real_det(jet_metric(hjet, k - 1));
  const double det_k = real_det(jet_metric(hjet, k));
  const double det_kp1 = real_det(jet_metric(hjet, k + 1));
  const double formula = det_km1 * det_kp1 / (det_k * det_k);

  const double log_route = curvature_log_line(jet_metric_jet(hjet, k, {1, 1}).det());
  return {formula, log_route, rel_residual(formula, log_route)};
}

double det_bundle_curvature(const MatrixJet& hjet, int k) {
  const DetBundleCurvature r = det_bundle_curvature_routes(hjet, k);
  if (r.residual > kDetRouteTol)
    throw InternalInconsistency("det_bundle_curvature: minor formula and log route disagree");
  return r.value;
}

MatrixJet quotient_metric(const MatrixJet& hjet, int k, int jet_order) {
  if (k < 0) throw OrderRange("quotient_metric: k must be nonnegative");
  const BiOrder sub{jet_order, jet_order};
  if (k == 0) return hjet.truncated(sub);  // J_{-1} is the zero-rank bundle
  const MatrixJet hk = wedge_gram(hjet, k, jet_order).gram;
  const Jet det_jkm1 = jet_metric_jet(hjet, k - 1, sub).det();
  return hk.scaled(det_jkm1.inverse());
}

Matrix quotient_curvature(const MatrixJet& hjet, int k) {
  return curvature(quotient_metric(hjet, k, 1)).theta;
}

double trace_formula_residual(const MatrixJet& hjet, int k) {
  if (k < 1) throw OrderRange("trace_formula_residual: k must be at least 1");
  const int n = hjet.rank();
  const Matrix lhs_k = partial_trace(jet_curvature(hjet, k).theta, n);
  const Matrix lhs_km1 = partial_trace(jet_curvature(hjet, k - 1).theta, n);
  const Matrix rhs = quotient_curvature(hjet, k);
  return (lhs_k - lhs_km1 - rhs).norm();
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

ProductMetric::ProductMetric(std::vector<MetricModel> factors) : factors_(std::move(factors)) {
  if (factors_.empty() || factors_.size() > 2)
    throw ConfigError("ProductMetric supports 1 or 2 variables");
  rank_ = 1;
  for (const auto& f : factors_) rank_ *= f.rank();
}

MultiCurvature curvature_multivar(const ProductMetric& metric, const std::vector<Complex>& point) {
  const int m = metric.vars();
  if (static_cast<int>(point.size()) != m)
    throw ConfigError("curvature_multivar: point dimension mismatch");

  std::vector<MatrixJet> lifts;
  lifts.reserve(static_cast<size_t>(m));
  for (int f = 0; f < m; ++f)
    lifts.push_back(metric.factor(f).lift(point[static_cast<size_t>(f)], {1, 1}));

  // Mixed partial with per-variable orders (a_f, b_f), a_f + b_f <= 2 each.
  auto mixed = [&](const std::vector<std::pair<int, int>>& orders) {
    Matrix acc = lifts[0].partial(orders[0].first, orders[0].second);
    for (int f = 1; f < m; ++f)
      acc = kron(acc, lifts[static_cast<size_t>(f)].partial(orders[static_cast<size_t>(f)].first,
    orders[static_cast<size_t>(f)].second));
    return acc;
  };

  auto orders_zero = std::vector<std::pair<int, int>>(static_cast<size_t>(m), {0, 0});
  const Matrix h = hermitized(mixed(orders_zero));
  const Matrix hinv = pd_inverse(h, "curvature_multivar");
  const double deth = real_det(h);
  const int n = metric.rank();

  std::vector<Matrix> dh(static_cast<size_t>(m)), dbarh(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto o = orders_zero;
    o[static_cast<size_t>(i)] = {1, 0};
    dh[static_cast<size_t>(i)] = mixed(o);
    o[static_cast<size_t>(i)] = {0, 1};
    dbarh[static_cast<size_t>(i)] = mixed(o);
  }

  MultiCurvature out;
  out.vars = m;
  out.rank = n;
  out.theta.resize(static_cast<size_t>(m) * m);
  double worst = 0.0;

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto o = orders_zero;
      if (i == j) {
        o[static_cast<size_t>(i)] = {1, 1};
      } else {
        o[static_cast<size_t>(i)] = {1, 0};
        o[static_cast<size_t>(j)] = {0, 1};
      }
      const Matrix mixed_ij = mixed(o);
      const Matrix& di = dh[static_cast<size_t>(i)];
      const Matrix& dbj = dbarh[static_cast<size_t>(j)];

      const Matrix theta = hinv * (mixed_ij - dbj * hinv * di);

      // Bordered-Gram route.
      Matrix gram(n, n);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          Matrix bordered(n + 1, n + 1);
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) bordered(a, b) = h(b, a);
          for (int b = 0; b < n; ++b) bordered(n, b) = di(b, q);
          for (int a = 0; a < n; ++a) bordered(a, n) = dbj(p, a);
          bordered(n, n) = mixed_ij(p, q);
          gram(p, q) = bordered.determinant();
        }
      const Matrix theta_gram = hinv * gram / deth;

      worst = std::max(worst, (theta - theta_gram).norm() / (1.0 + theta_gram.norm()));
      out.theta[static_cast<size_t>(i * m + j)] = theta;
    }

  out.route_discrepancy = worst;
  if (worst > kMultiRouteTol)
    throw InternalInconsistency("curvature_multivar: direct and bordered-Gram routes disagree");
  return out;
}

CurvatureForm curvature_at(const MetricModel& model, Complex z0) {
  return curvature(model.lift(z0, lift_order(0)));
}

CurvatureForm jet_curvature_at(const MetricModel& model, Complex z0, int k) {
  return jet_curvature(model.lift(z0, lift_order(k)), k);
}

double det_bundle_curvature_at(const MetricModel& model, Complex z0, int k) {
  return det_bundle_curvature(model.lift(z0, lift_order(k)), k);
}

Matrix quotient_curvature_at(const MetricModel& model, Complex z0, int k) {
  return quotient_curvature(model.lift(z0, lift_order(k)), k);
}

double trace_formula_residual_at(const MetricModel& model, Complex z0, int k) {
  return trace_formula_residual(model.lift(z0, lift_order(k)), k);
}

}  // namespace jetcurv
