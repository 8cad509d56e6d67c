#include "jetcurv/jets.hpp"

#include <algorithm>

namespace jetcurv {

Jet Jet::shift_derivative(int p, int q) const {
  if (p < 0 || q < 0 || p > order_.p || q > order_.q)
    throw OrderRange("shift_derivative order out of range");
  Jet out(center_, {order_.p - p, order_.q - q});
  for (int r = 0; r + p <= order_.p; ++r)
    for (int s = 0; s + q <= order_.q; ++s)
      out.at(r, s) = rising_factorial_ratio(r, p) * rising_factorial_ratio(s, q) * at(r + p, s + q);
  return out;
}

Jet Jet::truncated(BiOrder order) const {
  if (!order_.covers(order)) throw OrderRange("cannot truncate to a larger bi-order");
  Jet out(center_, order);
  for (int p = 0; p <= order.p; ++p)
    for (int q = 0; q <= order.q; ++q) out.at(p, q) = at(p, q);
  return out;
}

Jet Jet::operator+(const Jet& o) const {
  require_same_frame(o);
  Jet out = *this;
  for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += o.coeffs_[i];
  return out;
}

Jet Jet::operator-(const Jet& o) const {
  require_same_frame(o);
  Jet out = *this;
  for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] -= o.coeffs_[i];
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Jet Jet::operator*(const Jet& o) const {
  require_same_frame(o);
  Jet out(center_, order_);
  for (int p = 0; p <= order_.p; ++p)
    for (int q = 0; q <= order_.q; ++q) {
      Complex acc = 0.0;
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= q; ++s) acc += at(r, s) * o.at(p - r, q - s);
      out.at(p, q) = acc;
    }
  return out;
}

Jet Jet::operator*(Complex s) const {
  Jet out = *this;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

Jet Jet::inverse() const {
  const Complex c0 = at(0, 0);
  if (std::abs(c0) == 0.0) throw DegenerateMetric("jet inverse: zero constant term");
  // a = c0 (1 + s) with s of zero constant term, so 1/a = (sum (-s)^j) / c0.
  Jet s = *this * (1.0 / c0);
  s.at(0, 0) = 0.0;
  const int terms = order_.total();
  Jet acc = Jet::one(center_, order_);
  for (int j = 0; j < terms; ++j) {
    acc = -(s * acc);
    acc.at(0, 0) += 1.0;
  }
  return acc * (1.0 / c0);
}

double Jet::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Jet log_jet(const Jet& a) {
  const Complex c0 = a.at(0, 0);
  if (!(c0.real() > 0.0) || std::abs(c0.imag()) > 1e-10 * std::abs(c0))
    throw DegenerateMetric("log_jet: constant term must be real positive");
  Jet s = a * (1.0 / c0);
  s.at(0, 0) = 0.0;
  // log(c0 (1 + s)) = log c0 + sum_{j>=1} (-1)^{j+1} s^j / j, Horner form.
  const int terms = a.order().total();
  Jet acc(a.center(), a.order());
  for (int j = terms; j >= 1; --j) {
    acc = -(s * acc);
    acc.at(0, 0) += 1.0 / j;
  }
  acc = s * acc;
  acc.at(0, 0) += std::log(c0.real());
  return acc;
}

MatrixJet MatrixJet::from_scalar(const Jet& j) {
  MatrixJet out(j.center(), j.order(), 1);
  for (int p = 0; p <= j.order().p; ++p)
    for (int q = 0; q <= j.order().q; ++q) out.at(p, q)(0, 0) = j.at(p, q);
  return out;
}

Jet MatrixJet::entry(int i, int j) const {
  Jet out(center_, order_);
  for (int p = 0; p <= order_.p; ++p)
    for (int q = 0; q <= order_.q; ++q) out.at(p, q) = at(p, q)(i, j);
  return out;
}

void MatrixJet::set_entry(int i, int j, const Jet& e) {
  if (e.center() != center_ || e.order() != order_)
    throw FrameMismatch("set_entry: jet frame differs from matrix jet");
  for (int p = 0; p <= order_.p; ++p)
    for (int q = 0; q <= order_.q; ++q) at(p, q)(i, j) = e.at(p, q);
}

MatrixJet MatrixJet::shift_derivative(int p, int q) const {
  if (p < 0 || q < 0 || p > order_.p || q > order_.q)
    throw OrderRange("shift_derivative order out of range");
  MatrixJet out(center_, {order_.p - p, order_.q - q}, rank_);
  for (int r = 0; r + p <= order_.p; ++r)
    for (int s = 0; s + q <= order_.q; ++s)
      out.at(r, s) = rising_factorial_ratio(r, p) * rising_factorial_ratio(s, q) * at(r + p, s + q);
  return out;
}

MatrixJet MatrixJet::truncated(BiOrder order) const {
  if (!order_.covers(order)) throw OrderRange("cannot truncate to a larger bi-order");
  MatrixJet out(center_, order, rank_);
  for (int p = 0; p <= order.p; ++p)
    for (int q = 0; q <= order.q; ++q) out.at(p, q) = at(p, q);
  return out;
}

MatrixJet MatrixJet::adjoint() const {
  if (order_.p != order_.q) throw OrderRange("adjoint requires a square bi-order");
  MatrixJet out(center_, order_, rank_);
  for (int p = 0; p <= order_.p; ++p)
    for (int q = 0; q <= order_.q; ++q) out.at(p, q) = at(q, p).adjoint();
  return out;
}

MatrixJet MatrixJet::operator+(const MatrixJet& o) const {
  require_same_frame(o);
  MatrixJet out = *this;
  for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += o.coeffs_[i];
  return out;
}

MatrixJet MatrixJet::operator-(const MatrixJet& o) const {
  require_same_frame(o);
  MatrixJet out = *this;
  for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] -= o.coeffs_[i];
  return out;
}

MatrixJet MatrixJet::operator-() const {
  MatrixJet out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

MatrixJet MatrixJet::operator*(const MatrixJet& o) const {
  require_same_frame(o);
  MatrixJet out(center_, order_, rank_);
  for (int p = 0; p <= order_.p; ++p)
    for (int q = 0; q <= order_.q; ++q) {
      Matrix acc = Matrix::Zero(rank_, rank_);
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= q; ++s) acc += at(r, s) * o.at(p - r, q - s);
      out.at(p, q) = acc;
    }
  return out;
}

MatrixJet MatrixJet::scaled(const Jet& s) const {
  if (s.center() != center_ || s.order() != order_)
    throw FrameMismatch("scaled: scalar jet frame differs");
  MatrixJet out(center_, order_, rank_);
  for (int p = 0; p <= order_.p; ++p)
    for (int q = 0; q <= order_.q; ++q) {
      Matrix acc = Matrix::Zero(rank_, rank_);
      for (int r = 0; r <= p; ++r)
        for (int t = 0; t <= q; ++t) acc += s.at(r, t) * at(p - r, q - t);
      out.at(p, q) = acc;
    }
  return out;
}

MatrixJet MatrixJet::scaled(Complex s) const {
  MatrixJet out = *this;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

MatrixJet MatrixJet::left_mul(const Matrix& m) const {
  MatrixJet out = *this;
  for (auto& c : out.coeffs_) c = m * c;
  return out;
}

MatrixJet MatrixJet::right_mul(const Matrix& m) const {
  MatrixJet out = *this;
  for (auto& c : out.coeffs_) c = c * m;
  return out;
}

MatrixJet MatrixJet::inverse() const {
  Eigen::FullPivLU<Matrix> lu(at(0, 0));
  if (!lu.isInvertible()) throw DegenerateMetric("matrix jet inverse: singular constant term");
  const Matrix u = lu.inverse();
  // a = c0 (I + S) with S of zero constant term: 1/a = (sum (-S)^j) c0^{-1}.
  MatrixJet s = left_mul(u);
  s.at(0, 0) = Matrix::Zero(rank_, rank_);
  const int terms = order_.total();
  MatrixJet acc = MatrixJet::identity(center_, order_, rank_);
  for (int j = 0; j < terms; ++j) {
    acc = -(s * acc);
    acc.at(0, 0) += Matrix::Identity(rank_, rank_);
  }
  return acc.right_mul(u);
}

namespace {

// Determinant of an n x n array of jets, Gaussian elimination with row
// pivoting; falls back to cofactor expansion along the first column when no
// constant-term pivot exists there.
Jet det_impl(std::vector<Jet> a, int n, Complex center, BiOrder order) {
  if (n == 0) return Jet::one(center, order);
  if (n == 1) return a[0];

  int piv = -1;
  double best = 0.0;
  for (int r = 0; r < n; ++r) {
    const double c = std::abs(a[static_cast<size_t>(r) * n].at(0, 0));
    if (c > best) {
      best = c;
      piv = r;
    }
  }

  if (piv < 0) {
    // Whole first column has vanishing constant terms: cofactor expansion.
    Jet acc(center, order);
    for (int r = 0; r < n; ++r) {
      std::vector<Jet> minor;
      minor.reserve(static_cast<size_t>((n - 1) * (n - 1)));
      for (int i = 0; i < n; ++i) {
        if (i == r) continue;
        for (int j = 1; j < n; ++j) minor.push_back(a[static_cast<size_t>(i) * n + j]);
      }
      Jet term = a[static_cast<size_t>(r) * n] * det_impl(std::move(minor), n - 1, center, order);
      acc = (r % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  }

  double sign = 1.0;
  if (piv != 0) {
    for (int j = 0; j < n; ++j)
      std::swap(a[static_cast<size_t>(piv) * n + j], a[static_cast<size_t>(j)]);
    sign = -1.0;
  }

  const Jet pivot = a[0];
  const Jet pinv = pivot.inverse();
  for (int r = 1; r < n; ++r) {
    Jet factor = a[static_cast<size_t>(r) * n] * pinv;
    for (int c = 1; c < n; ++c)
      a[static_cast<size_t>(r) * n + c] -= factor * a[static_cast<size_t>(c)];
  }

  std::vector<Jet> minor;
  minor.reserve(static_cast<size_t>((n - 1) * (n - 1)));
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) minor.push_back(a[static_cast<size_t>(i) * n + j]);

  return (pivot * det_impl(std::move(minor), n - 1, center, order)) * sign;
}

}  // namespace

Jet MatrixJet::det() const {
  std::vector<Jet> a;
  a.reserve(static_cast<size_t>(rank_) * rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) a.push_back(entry(i, j));
  return det_impl(std::move(a), rank_, center_, order_);
}

double MatrixJet::hermitian_defect() const {
  if (order_.p != order_.q) throw OrderRange("hermitian_defect requires a square bi-order");
  double m = 0.0;
  for (int p = 0; p <= order_.p; ++p)
    for (int q = 0; q <= order_.q; ++q) m = std::max(m, (at(p, q) - at(q, p).adjoint()).norm());
  return m;
}

double MatrixJet::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.cwiseAbs().maxCoeff());
  return m;
}

}  // namespace jetcurv
