#include "jetcurv/models.hpp"

#include <algorithm>
#include <cmath>

namespace jetcurv {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex(0.0));
}

Polynomial::Polynomial(std::vector<double> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (double c : coeffs) coeffs_.emplace_back(c);
  if (coeffs_.empty()) coeffs_.push_back(Complex(0.0));
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
  return acc;
}

Complex Polynomial::derivative_at(Complex z, int order) const {
  // Horner on the coefficients of the order-th derivative.
  Complex acc = 0.0;
  for (int m = degree(); m >= order; --m)
    acc = acc * z + coeffs_[static_cast<size_t>(m)] * rising_factorial_ratio(m - order, order);
  return acc;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<Complex> out(coeffs_.size() + o.coeffs_.size() - 1, Complex(0.0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Complex> out(std::max(coeffs_.size(), o.coeffs_.size()), Complex(0.0));
  for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
  return Polynomial(std::move(out));
}

Jet Polynomial::lift(Complex z0, BiOrder order) const {
  Jet out(z0, order);
  for (int d = 0; d <= order.p; ++d) out.at(d, 0) = derivative_at(z0, d) / factorial(d);
  return out;
}

Jet Polynomial::lift_conj(Complex z0, BiOrder order) const {
  Jet out(z0, order);
  for (int d = 0; d <= order.q; ++d) out.at(0, d) = std::conj(derivative_at(z0, d)) / factorial(d);
  return out;
}

HoloFrame::HoloFrame(std::vector<std::vector<Polynomial>> entries)
    : rank_(static_cast<int>(entries.size())) {
  if (rank_ < 1) throw FrameMismatch("empty frame");
  entries_.reserve(static_cast<size_t>(rank_) * rank_);
  for (const auto& row : entries) {
    if (static_cast<int>(row.size()) != rank_) throw FrameMismatch("frame must be square");
    for (const auto& p : row) entries_.push_back(p);
  }
}

HoloFrame HoloFrame::identity(int rank) {
  std::vector<std::vector<Polynomial>> e(static_cast<size_t>(rank),
                                         std::vector<Polynomial>(static_cast<size_t>(rank)));
  for (int i = 0; i < rank; ++i) e[static_cast<size_t>(i)][static_cast<size_t>(i)] =
      Polynomial(std::vector<Complex>{1.0});
  return HoloFrame(std::move(e));
}

Matrix HoloFrame::eval(Complex z) const { return derivative_at(z, 0); }

Matrix HoloFrame::derivative_at(Complex z, int order) const {
  Matrix m(rank_, rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) m(i, j) = entry(i, j).derivative_at(z, order);
  return m;
}

MatrixJet HoloFrame::lift(Complex z0, BiOrder order) const {
  MatrixJet out(z0, order, rank_);
  for (int d = 0; d <= order.p; ++d) out.at(d, 0) = derivative_at(z0, d) / factorial(d);
  return out;
}

MatrixJet HoloFrame::lift_adjoint(Complex z0, BiOrder order) const {
  MatrixJet out(z0, order, rank_);
  for (int d = 0; d <= order.q; ++d)
    out.at(0, d) = derivative_at(z0, d).adjoint() / factorial(d);
  return out;
}

HoloFrame HoloFrame::operator*(const HoloFrame& o) const {
  if (rank_ != o.rank_) throw FrameMismatch("frame product rank mismatch");
  std::vector<std::vector<Polynomial>> out(static_cast<size_t>(rank_),
                                           std::vector<Polynomial>(static_cast<size_t>(rank_)));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      Polynomial acc;
      for (int l = 0; l < rank_; ++l) acc = acc + entry(i, l) * o.entry(l, j);
      out[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
    }
  return HoloFrame(std::move(out));
}

namespace {

constexpr double kKernelTailTol = 1e-12;
constexpr double kKernelRadiusFraction = 0.95;

double kernel_weight(const MetricModel::Kernel& k, int m) {
  const int last = static_cast<int>(k.weights.size()) - 1;
  if (m <= last) return k.weights[static_cast<size_t>(m)];
  return k.weights.back() * std::pow(k.tail_ratio, m - last);
}

// m-th Taylor coefficient of h(t) = sum_j t^j / w_j^2 at t0, i.e.
// sum_{j>=m} C(j,m) t0^(j-m) / w_j^2.  The geometric tail bound must certify
// an absolute remainder below kKernelTailTol; summation then continues to
// machine convergence so downstream difference quotients see full precision.
double kernel_taylor_coeff(const MetricModel::Kernel& k, double t0, int m) {
  const double rho2 = k.tail_ratio * k.tail_ratio;
  const int head = static_cast<int>(k.weights.size());
  double acc = 0.0;
  double term = 1.0 / (kernel_weight(k, m) * kernel_weight(k, m));  // j = m term
  constexpr int kMaxTerms = 200000;
  for (int j = m; j < m + kMaxTerms; ++j) {
    acc += term;
    const double wj = kernel_weight(k, j), wj1 = kernel_weight(k, j + 1);
    const double ratio = (t0 == 0.0 && j + 1 - m > 0)
                             ? 0.0
                             : (static_cast<double>(j + 1) / (j + 1 - m)) * t0 * (wj * wj) /
                                   (wj1 * wj1);
    term *= ratio;
    if (j >= head - 2) {
      // All later weight ratios equal tail_ratio; the term ratios are bounded
      // by q, so the remainder after adding `term` is below term * q / (1 - q).
      const double q = (static_cast<double>(j + 2) / (j + 2 - m)) * t0 / rho2;
      const double bound = std::abs(term) * (1.0 + (q < 1.0 ? q / (1.0 - q) : 0.0));
      if (q < 1.0 && bound < kKernelTailTol &&
          bound <= 1e-17 * std::max(std::abs(acc), 1e-300))
        return acc + term;
    }
  }
  throw DomainError("kernel series tail bound not met at requested tolerance");
}

// Taylor coefficients a_m = h^(m)(t0)/m! of the radial profile, m = 0..M.
std::vector<double> radial_taylor(const MetricModel::Node& node, double t0, int M) {
  std::vector<double> a(static_cast<size_t>(M) + 1, 0.0);
  if (const auto* pw = std::get_if<MetricModel::Power>(&node)) {
    const double lam = pw->lambda;
    a[0] = std::pow(1.0 - t0, -lam);
    for (int m = 0; m < M; ++m)
      a[static_cast<size_t>(m) + 1] = a[static_cast<size_t>(m)] * (lam + m) / ((m + 1) * (1.0 - t0));
  } else if (std::holds_alternative<MetricModel::Exp>(node)) {
    a[0] = std::exp(t0);
    for (int m = 0; m < M; ++m) a[static_cast<size_t>(m) + 1] = a[static_cast<size_t>(m)] / (m + 1);
  } else if (const auto* pl = std::get_if<MetricModel::Poly>(&node)) {
    for (int m = 0; m <= M; ++m) {
      double acc = 0.0;
      for (int j = m; j < static_cast<int>(pl->coeffs.size()); ++j)
        acc += pl->coeffs[static_cast<size_t>(j)] * binomial(j, m) * std::pow(t0, j - m);
      a[static_cast<size_t>(m)] = acc;
    }
  } else if (const auto* kr = std::get_if<MetricModel::Kernel>(&node)) {
    for (int m = 0; m <= M; ++m) a[static_cast<size_t>(m)] = kernel_taylor_coeff(*kr, t0, m);
  } else {
    throw Error("radial_taylor: not a radial node");
  }
  return a;
}

// Jet of h(t(z)) at z0 from the 1-D Taylor coefficients of h at t0 = |z0|^2,
// composed with s = t - t0 = conj(z0) u + z0 v + u v via Horner.
Jet radial_jet(Complex z0, BiOrder order, const std::vector<double>& taylor) {
  Jet s(z0, order);
  if (order.p >= 1) s.at(1, 0) = std::conj(z0);
  if (order.q >= 1) s.at(0, 1) = z0;
  if (order.p >= 1 && order.q >= 1) s.at(1, 1) = 1.0;
  Jet acc = Jet::constant(z0, order, taylor.back());
  for (size_t m = taylor.size() - 1; m-- > 0;) {
    acc = acc * s;
    acc.at(0, 0) += taylor[m];
  }
  return acc;
}

void check_positive_definite(const Matrix& value, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(value));
  const double lo = es.eigenvalues().minCoeff();
  if (!(lo > 0.0))
    throw DegenerateMetric(std::string(what) + ": value not positive definite");
}

}  // namespace

MetricModel::MetricModel(Node node) : node_(std::make_shared<Node>(std::move(node))) {
  std::visit(
      [this](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Power>) {
          radius_ = usable_radius_ = 1.0;
        } else if constexpr (std::is_same_v<T, Kernel>) {
          radius_ = n.tail_ratio;
          usable_radius_ = kKernelRadiusFraction * n.tail_ratio;
        } else if constexpr (std::is_same_v<T, Diag>) {
          rank_ = 0;
          for (const auto& b : n.blocks) {
            rank_ += b.rank();
            radius_ = std::min(radius_, b.domain_radius());
            usable_radius_ = std::min(usable_radius_, b.usable_radius());
          }
        } else if constexpr (std::is_same_v<T, FrameConj>) {
          rank_ = n.base->rank();
          radius_ = n.base->domain_radius();
          usable_radius_ = n.base->usable_radius();
        } else if constexpr (std::is_same_v<T, Scale>) {
          rank_ = n.base->rank();
          radius_ = n.base->domain_radius();
          usable_radius_ = n.base->usable_radius();
        }
      },
      *node_);
}

MetricModel MetricModel::power(double lambda) {
  if (!(lambda > 0.0)) throw ConfigError("PowerModel: lambda must be positive");
  return MetricModel(Power{lambda});
}

MetricModel MetricModel::exponential() { return MetricModel(Exp{}); }

MetricModel MetricModel::poly(std::vector<double> coeffs) {
  if (coeffs.empty()) throw ConfigError("PolyModel: needs at least one coefficient");
  if (!(coeffs[0] > 0.0)) throw ConfigError("PolyModel: constant coefficient must be positive");
  return MetricModel(Poly{std::move(coeffs)});
}

MetricModel MetricModel::kernel(std::vector<double> weights, double tail_ratio) {
  if (weights.empty()) throw ConfigError("KernelModel: needs at least one weight");
  for (double w : weights)
    if (!(w > 0.0)) throw ConfigError("KernelModel: weights must be positive");
  if (!(tail_ratio > 0.0)) throw ConfigError("KernelModel: tail ratio must be positive");
  return MetricModel(Kernel{std::move(weights), tail_ratio});
}

MetricModel MetricModel::diag(std::vector<MetricModel> blocks) {
  if (blocks.empty()) throw ConfigError("DiagModel: needs at least one block");
  return MetricModel(Diag{std::move(blocks)});
}

MetricModel MetricModel::frame_conj(HoloFrame frame, MetricModel base) {
  if (frame.rank() != base.rank()) throw FrameMismatch("FrameConjModel: rank mismatch");
  return MetricModel(FrameConj{std::move(frame), std::make_shared<const MetricModel>(std::move(base))});
}

MetricModel MetricModel::scale(Polynomial phi, MetricModel base) {
  return MetricModel(Scale{std::move(phi), std::make_shared<const MetricModel>(std::move(base))});
}

MetricModel MetricModel::frame_transform(const HoloFrame& A) const {
  return frame_conj(A, *this);
}

Matrix MetricModel::eval(Complex z) const {
  const double r = std::abs(z);
  if (r >= radius_) throw DomainError("eval: point outside the model domain");

  Matrix value = std::visit(
      [&](const auto& n) -> Matrix {
        using T = std::decay_t<decltype(n)>;
        const double t0 = std::norm(z);
        if constexpr (std::is_same_v<T, Power>) {
          return Matrix::Constant(1, 1, std::pow(1.0 - t0, -n.lambda));
        } else if constexpr (std::is_same_v<T, Exp>) {
          return Matrix::Constant(1, 1, std::exp(t0));
        } else if constexpr (std::is_same_v<T, Poly>) {
          double acc = 0.0;
          for (size_t m = n.coeffs.size(); m-- > 0;) acc = acc * t0 + n.coeffs[m];
          return Matrix::Constant(1, 1, acc);
        } else if constexpr (std::is_same_v<T, Kernel>) {
          return Matrix::Constant(1, 1, kernel_taylor_coeff(n, t0, 0));
        } else if constexpr (std::is_same_v<T, Diag>) {
          Matrix m = Matrix::Zero(rank_, rank_);
          int off = 0;
          for (const auto& b : n.blocks) {
            m.block(off, off, b.rank(), b.rank()) = b.eval(z);
            off += b.rank();
          }
          return m;
        } else if constexpr (std::is_same_v<T, FrameConj>) {
          const Matrix a = n.frame.eval(z);
          if (std::abs(Complex(a.determinant())) < 1e-14)
            throw DegenerateMetric("holomorphic frame singular at sample point");
          return a.adjoint() * n.base->eval(z) * a;
        } else {
          const Complex phi = n.phi(z);
          return std::norm(phi) * n.base->eval(z);
        }
      },
      *node_);

  value = hermitized(value);
  check_positive_definite(value, "eval");
  return value;
}

MatrixJet MetricModel::lift(Complex z0, BiOrder order) const {
  const double r = std::abs(z0);
  if (r >= usable_radius_)
    throw DomainError(usable_radius_ < radius_
                          ? "lift: point too close to the kernel convergence radius"
                          : "lift: point outside the model domain");

  return std::visit(
      [&](const auto& n) -> MatrixJet {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Power> || std::is_same_v<T, Exp> ||
                      std::is_same_v<T, Poly> || std::is_same_v<T, Kernel>) {
          const double t0 = std::norm(z0);
          return MatrixJet::from_scalar(radial_jet(z0, order, radial_taylor(*node_, t0, order.total())));
        } else if constexpr (std::is_same_v<T, Diag>) {
          MatrixJet out(z0, order, rank_);
          int off = 0;
          for (const auto& b : n.blocks) {
            const MatrixJet bj = b.lift(z0, order);
            for (int p = 0; p <= order.p; ++p)
              for (int q = 0; q <= order.q; ++q)
                out.at(p, q).block(off, off, b.rank(), b.rank()) = bj.at(p, q);
            off += b.rank();
          }
          return out;
        } else if constexpr (std::is_same_v<T, FrameConj>) {
          const Matrix a = n.frame.eval(z0);
          if (std::abs(Complex(a.determinant())) < 1e-14)
            throw DegenerateMetric("holomorphic frame singular at sample point");
          return n.frame.lift_adjoint(z0, order) * n.base->lift(z0, order) *
                 n.frame.lift(z0, order);
        } else {
          const Jet scale = n.phi.lift(z0, order) * n.phi.lift_conj(z0, order);
          return n.base->lift(z0, order).scaled(scale);
        }
      },
      *node_);
}

}  // namespace jetcurv
