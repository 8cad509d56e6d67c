#pragma once

#include <vector>

#include "jetcurv/base.hpp"

namespace jetcurv {

/**
 * Truncated bivariate expansion of a real-analytic function of z around a
 * center z0, in the commuting formal variables
 *
 *   u = z - z0,   v = conj(z) - conj(z0).
 *
 * coeff(p, q) is the coefficient of u^p v^q, so the mixed Wirtinger partial
 * d^{p+q} f / dz^p dconj(z)^q at z0 equals p! q! coeff(p, q).  All ring
 * operations truncate to the stored bi-order; arithmetic on jets with equal
 * centers and bi-orders is exact in the truncated polynomial ring.
 */
class Jet {
 public:
  Jet(Complex center, BiOrder order)
      : center_(center), order_(order),
        coeffs_(static_cast<size_t>((order.p + 1) * (order.q + 1)), Complex(0.0)) {
    if (order.p < 0 || order.q < 0) throw OrderRange("negative bi-order");
  }

  static Jet constant(Complex center, BiOrder order, Complex value) {
    Jet j(center, order);
    j.at(0, 0) = value;
    return j;
  }

  static Jet one(Complex center, BiOrder order) { return constant(center, order, 1.0); }

  Complex center() const { return center_; }
  BiOrder order() const { return order_; }

  Complex& at(int p, int q) { return coeffs_[index(p, q)]; }
  Complex at(int p, int q) const { return coeffs_[index(p, q)]; }

  /// d^{p+q} / dz^p dconj(z)^q at the center.
  Complex partial(int p, int q) const { return factorial(p) * factorial(q) * at(p, q); }

  /// Jet of the formal derivative d^p_z d^q_{conj z} f; bi-order drops to (P-p, Q-q).
  Jet shift_derivative(int p, int q) const;

  /// Copy truncated to a smaller bi-order.
  Jet truncated(BiOrder order) const;

  bool same_frame(const Jet& o) const { return center_ == o.center_ && order_ == o.order_; }

  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator-() const;
  Jet operator*(const Jet& o) const;
  Jet operator*(Complex s) const;
  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  /// Two-sided inverse in the truncated ring; requires a nonzero constant term.
  Jet inverse() const;

  double max_abs() const;

  friend Jet operator*(Complex s, const Jet& j) { return j * s; }

 private:
  size_t index(int p, int q) const {
    if (p < 0 || q < 0 || p > order_.p || q > order_.q)
      throw OrderRange("jet coefficient (" + std::to_string(p) + "," + std::to_string(q) +
                       ") outside bi-order (" + std::to_string(order_.p) + "," +
                       std::to_string(order_.q) + ")");
    return static_cast<size_t>(p * (order_.q + 1) + q);
  }

  void require_same_frame(const Jet& o) const {
    if (!same_frame(o)) throw FrameMismatch("jet centers or bi-orders differ");
  }

  Complex center_;
  BiOrder order_;
  std::vector<Complex> coeffs_;
};

/// log of a jet with positive real constant term, in the truncated ring.
Jet log_jet(const Jet& a);

/**
 * Square matrix of jets sharing one center and bi-order, stored as one
 * coefficient matrix per (p, q).  A metric jet satisfies the Hermitian
 * coefficient symmetry conj(coeff(p,q)(i,j)) = coeff(q,p)(j,i).
 */
class MatrixJet {
 public:
  MatrixJet(Complex center, BiOrder order, int rank)
      : center_(center), order_(order), rank_(rank),
        coeffs_(static_cast<size_t>((order.p + 1) * (order.q + 1)),
                Matrix::Zero(rank, rank)) {
    if (rank < 1) throw FrameMismatch("matrix jet rank must be positive");
    if (order.p < 0 || order.q < 0) throw OrderRange("negative bi-order");
  }

  static MatrixJet identity(Complex center, BiOrder order, int rank) {
    MatrixJet m(center, order, rank);
    m.at(0, 0) = Matrix::Identity(rank, rank);
    return m;
  }

  static MatrixJet from_scalar(const Jet& j);

  Complex center() const { return center_; }
  BiOrder order() const { return order_; }
  int rank() const { return rank_; }

  Matrix& at(int p, int q) { return coeffs_[index(p, q)]; }
  const Matrix& at(int p, int q) const { return coeffs_[index(p, q)]; }

  /// Matrix of mixed partials d^{p+q} h / dz^p dconj(z)^q at the center.
  Matrix partial(int p, int q) const { return factorial(p) * factorial(q) * at(p, q); }

  Jet entry(int i, int j) const;
  void set_entry(int i, int j, const Jet& e);

  MatrixJet shift_derivative(int p, int q) const;
  MatrixJet truncated(BiOrder order) const;

  /// Entrywise conjugate transpose in the jet sense: result(i,j) = conj(this(j,i)).
  MatrixJet adjoint() const;

  bool same_frame(const MatrixJet& o) const {
    return center_ == o.center_ && order_ == o.order_ && rank_ == o.rank_;
  }

  MatrixJet operator+(const MatrixJet& o) const;
  MatrixJet operator-(const MatrixJet& o) const;
  MatrixJet operator-() const;
  MatrixJet operator*(const MatrixJet& o) const;
  MatrixJet& operator+=(const MatrixJet& o) { return *this = *this + o; }
  MatrixJet& operator-=(const MatrixJet& o) { return *this = *this - o; }

  /// Scale by a scalar jet (same center and bi-order).
  MatrixJet scaled(const Jet& s) const;
  MatrixJet scaled(Complex s) const;

  /// Left/right multiply every coefficient by a constant matrix.
  MatrixJet left_mul(const Matrix& m) const;
  MatrixJet right_mul(const Matrix& m) const;

  /// Two-sided inverse in the truncated ring; requires an invertible constant term.
  MatrixJet inverse() const;

  /**
   * Determinant in the jet ring.  Gaussian elimination with row pivoting on
   * the largest-modulus constant term; columns whose constant terms all
   * vanish are handled by cofactor expansion.
   */
  Jet det() const;

  /// Largest violation of the Hermitian coefficient symmetry (requires P == Q).
  double hermitian_defect() const;

  double max_abs() const;

 private:
  size_t index(int p, int q) const {
    if (p < 0 || q < 0 || p > order_.p || q > order_.q)
      throw OrderRange("matrix jet coefficient (" + std::to_string(p) + "," +
                       std::to_string(q) + ") outside bi-order");
    return static_cast<size_t>(p * (order_.q + 1) + q);
  }

  void require_same_frame(const MatrixJet& o) const {
    if (!same_frame(o)) throw FrameMismatch("matrix jet centers, bi-orders or ranks differ");
  }

  Complex center_;
  BiOrder order_;
  int rank_;
  std::vector<Matrix> coeffs_;
};

}  // namespace jetcurv
