#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace jetcurv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Maximum retained powers of u = z - z0 and v = conj(z - z0).
struct BiOrder {
  int p = 0;
  int q = 0;

  bool covers(BiOrder other) const { return p >= other.p && q >= other.q; }
  int total() const { return p + q; }

  friend bool operator==(BiOrder a, BiOrder b) { return a.p == b.p && a.q == b.q; }
  friend bool operator!=(BiOrder a, BiOrder b) { return !(a == b); }
};

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define JETCURV_DEFINE_ERROR(Name)                                          \
  struct Name : Error {                                                     \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}    \
  }

JETCURV_DEFINE_ERROR(FrameMismatch);         // incompatible centers, bi-orders or ranks
JETCURV_DEFINE_ERROR(OrderRange);            // requested derivative order not stored
JETCURV_DEFINE_ERROR(DegenerateMetric);      // metric value not positive definite / not invertible
JETCURV_DEFINE_ERROR(DegenerateJetMetric);   // jet metric fails the positive-definiteness floor
JETCURV_DEFINE_ERROR(DomainError);           // point outside a model's domain of validity
JETCURV_DEFINE_ERROR(ConfigError);           // bad model parameters or run configuration
JETCURV_DEFINE_ERROR(InternalInconsistency); // two independent computation routes disagree

#undef JETCURV_DEFINE_ERROR

/// n! as a double; orders stay far below the overflow threshold.
inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// (n+k)! / n! computed without large intermediates.
inline double rising_factorial_ratio(int n, int k) {
  double f = 1.0;
  for (int i = 1; i <= k; ++i) f *= n + i;
  return f;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double f = 1.0;
  for (int i = 0; i < k; ++i) f = f * (n - i) / (i + 1);
  return f;
}

/// Residual |a - b| on the scale 1 + |b|, meaningful near zero.
inline double rel_residual(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }
inline double rel_residual(Complex a, Complex b) { return std::abs(a - b) / (1.0 + std::abs(b)); }
inline double rel_residual(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / (1.0 + b.norm());
}

inline Matrix hermitized(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace jetcurv
