#pragma once

#include <limits>
#include <memory>
#include <variant>
#include <vector>

#include "jetcurv/jets.hpp"

namespace jetcurv {

/// Polynomial in z with complex coefficients, ascending powers.
class Polynomial {
 public:
  Polynomial() : coeffs_{Complex(0.0)} {}
  explicit Polynomial(std::vector<Complex> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial variable() { return Polynomial(std::vector<Complex>{0.0, 1.0}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  Complex operator()(Complex z) const;
  Complex derivative_at(Complex z, int order) const;

  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator+(const Polynomial& o) const;

  /// Jet of p(z) at z0: coefficients in u only.
  Jet lift(Complex z0, BiOrder order) const;
  /// Jet of conj(p(z)) at z0: coefficients in v only.
  Jet lift_conj(Complex z0, BiOrder order) const;

 private:
  std::vector<Complex> coeffs_;
};

/// Holomorphic frame change: square matrix of polynomials in z.
class HoloFrame {
 public:
  explicit HoloFrame(std::vector<std::vector<Polynomial>> entries);

  static HoloFrame identity(int rank);
  static HoloFrame scalar(Polynomial p) { return HoloFrame({{std::move(p)}}); }

  int rank() const { return rank_; }
  const Polynomial& entry(int i, int j) const { return entries_[static_cast<size_t>(i) * rank_ + j]; }

  Matrix eval(Complex z) const;
  /// Entrywise derivative A^{(order)}(z).
  Matrix derivative_at(Complex z, int order) const;

  /// Jet of A(z) at z0 (holomorphic: coefficients in u only).
  MatrixJet lift(Complex z0, BiOrder order) const;
  /// Jet of A(z)^* at z0 (antiholomorphic: coefficients in v only).
  MatrixJet lift_adjoint(Complex z0, BiOrder order) const;

  /// Pointwise matrix product (A B)(z), for cocycle checks.
  HoloFrame operator*(const HoloFrame& o) const;

 private:
  int rank_;
  std::vector<Polynomial> entries_;
};

/**
 * Declarative metric model h(z): closed forms, diagonal kernel power series
 * and combinators, each able to evaluate itself and to lift itself to a
 * MatrixJet at any interior point.  Evaluation must be Hermitian positive
 * definite inside the declared domain radius.
 */
class MetricModel {
 public:
  /// h = (1 - z conj z)^{-lambda}, lambda > 0, on the unit disk.
  struct Power {
    double lambda;
  };
  /// h = e^{z conj z} on the plane.
  struct Exp {};
  /// h = sum c_m (z conj z)^m, real coefficients, finitely many.
  struct Poly {
    std::vector<double> coeffs;
  };
  /**
   * h = sum_m (z conj z)^m / w_m^2.  The explicit weights are extended by a
   * geometric tail w_m = w_last * tail_ratio^(m - last), so the series
   * converges for |z| < tail_ratio; lifts refuse points above 0.95 of that
   * radius and certify an absolute series tail below 1e-12 per coefficient.
   */
  struct Kernel {
    std::vector<double> weights;
    double tail_ratio;
  };
  /// Block-diagonal combination; rank is the sum of block ranks.
  struct Diag {
    std::vector<MetricModel> blocks;
  };
  /// h~ = A(z)^* h(z) A(z) for a holomorphic polynomial frame A.
  struct FrameConj {
    HoloFrame frame;
    std::shared_ptr<const MetricModel> base;
  };
  /// h~ = |phi(z)|^2 h(z) for a polynomial phi.
  struct Scale {
    Polynomial phi;
    std::shared_ptr<const MetricModel> base;
  };

  using Node = std::variant<Power, Exp, Poly, Kernel, Diag, FrameConj, Scale>;

  static MetricModel power(double lambda);
  static MetricModel exponential();
  static MetricModel poly(std::vector<double> coeffs);
  static MetricModel kernel(std::vector<double> weights, double tail_ratio);
  static MetricModel diag(std::vector<MetricModel> blocks);
  static MetricModel frame_conj(HoloFrame frame, MetricModel base);
  static MetricModel scale(Polynomial phi, MetricModel base);

  const Node& node() const { return *node_; }
  int rank() const { return rank_; }
  /// Radius of the declared domain (infinite for entire models).
  double domain_radius() const { return radius_; }
  /// Largest radius at which lifts are accepted: kernel nodes stop at 0.95 of
  /// their convergence radius, everything else at the domain boundary.
  double usable_radius() const { return usable_radius_; }

  /// Hermitian positive definite value h(z); errors outside the domain.
  Matrix eval(Complex z) const;

  /// MatrixJet whose partial(p, q) is the exact mixed Wirtinger partial at z0.
  MatrixJet lift(Complex z0, BiOrder order) const;

  /// Model evaluating to A(z)^* h(z) A(z).
  MetricModel frame_transform(const HoloFrame& A) const;

 private:
  explicit MetricModel(Node node);

  std::shared_ptr<const Node> node_;
  int rank_ = 1;
  double radius_ = std::numeric_limits<double>::infinity();
  double usable_radius_ = std::numeric_limits<double>::infinity();
};

/// Single lift policy: a workflow touching jets up to order k lifts at (k+2, k+2).
inline BiOrder lift_order(int k) { return {k + 2, k + 2}; }

}  // namespace jetcurv
