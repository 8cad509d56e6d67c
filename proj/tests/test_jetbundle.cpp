#include <doctest.h>

#include "jetcurv/jetbundle.hpp"
#include "jetcurv/rng.hpp"

using namespace jetcurv;

namespace {

Polynomial random_poly(Rng& rng, int degree) {
  std::vector<Complex> c(static_cast<size_t>(degree) + 1);
  for (auto& x : c) x = rng.cnormal();
  return Polynomial(std::move(c));
}

HoloFrame random_frame(Rng& rng, int rank, int degree, Complex z0) {
  // Nonsingular at z0 with high probability; bias the diagonal away from zero.
  for (;;) {
    std::vector<std::vector<Polynomial>> e(static_cast<size_t>(rank));
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) {
        Polynomial p = random_poly(rng, degree);
        if (i == j) p = p + Polynomial(std::vector<Complex>{2.0});
        e[static_cast<size_t>(i)].push_back(p);
      }
    }
    HoloFrame f(std::move(e));
    if (std::abs(Complex(f.eval(z0).determinant())) > 0.2) return f;
  }
}

}  // namespace

TEST_CASE("jet metric of the weighted disk metric at the origin") {
  const MatrixJet h = MetricModel::power(1.0).lift(0.0, {3, 3});
  const Matrix j1 = jet_metric(h, 1);
  CHECK((j1 - Matrix::Identity(2, 2)).norm() < 1e-14);  // diag(1, lambda)
}

TEST_CASE("jet metric of the exponential metric at the origin is diag(i!)") {
  const MatrixJet h = MetricModel::exponential().lift(0.0, {4, 4});
  const Matrix j2 = jet_metric(h, 2);
  Matrix expect = Matrix::Zero(3, 3);
  expect(0, 0) = 1.0;
  expect(1, 1) = 1.0;
  expect(2, 2) = 2.0;
  CHECK((j2 - expect).norm() < 1e-13);
}

TEST_CASE("a constant metric is degenerate for k >= 1") {
  const MatrixJet h = MetricModel::poly({1.0}).lift(0.0, {3, 3});
  CHECK_THROWS_AS((void)jet_metric(h, 1), DegenerateJetMetric);
  // The unchecked assembly still exists for identities that do not need PD.
  const Matrix v = jet_metric_value(h, 1);
  CHECK(v(0, 0) == Complex(1.0));
  CHECK(std::abs(v(1, 1)) == 0.0);
}

TEST_CASE("jet metric is hermitian and positive definite on the catalog") {
  const MetricModel models[] = {
      MetricModel::power(1.0),
      MetricModel::power(2.0),
      MetricModel::exponential(),
      MetricModel::diag({MetricModel::power(1.0), MetricModel::power(2.0)}),
  };
  const Complex z0(0.3, 0.1);
  for (const auto& m : models)
    for (int k = 0; k <= 4; ++k) {
      const MatrixJet h = m.lift(z0, {k, k});
      const Matrix jk = jet_metric(h, k);
      CHECK((jk - jk.adjoint()).norm() < 1e-12 * jk.norm());
    }
}

TEST_CASE("jet-valued jet metric agrees with the pointwise assembly") {
  const MetricModel m = MetricModel::diag({MetricModel::power(1.0), MetricModel::exponential()});
  const Complex z0(0.2, -0.3);
  const MatrixJet h = m.lift(z0, {4, 4});
  const MatrixJet big = jet_metric_jet(h, 2, {2, 2});
  CHECK((big.at(0, 0) - jet_metric_value(h, 2)).norm() < 1e-13);
}

TEST_CASE("mixed log second derivative of det J_1 h for the disk metric") {
  // det J_1 h = lambda (1 - z zbar)^{-2 lambda - 2}; at lambda = 1 its
  // dz dzbar derivative at 0 equals 4.
  const MatrixJet h = MetricModel::power(1.0).lift(0.0, {3, 3});
  const Jet det = jet_metric_jet(h, 1, {2, 2}).det();
  CHECK(det.partial(1, 1).real() == doctest::Approx(4.0).epsilon(1e-12));

  const MatrixJet he = MetricModel::exponential().lift(0.0, {3, 3});
  CHECK(jet_metric_jet(he, 1, {2, 2}).det().at(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("frame jet blocks follow the binomial pattern") {
  const HoloFrame a = HoloFrame::scalar(Polynomial::variable());  // A(z) = z
  const Matrix m = frame_jet(a, 1.0, 2);
  Matrix expect(3, 3);
  expect << 1, 1, 0, 0, 1, 2, 0, 0, 1;
  CHECK((m - expect).norm() < 1e-14);

  CHECK((frame_jet(HoloFrame::identity(3), Complex(0.4, 0.2), 2) - Matrix::Identity(9, 9)).norm() ==
        0.0);
}

TEST_CASE("frame jet is a cocycle") {
  const HoloFrame a = HoloFrame::scalar(Polynomial::variable());
  const HoloFrame aa = a * a;  // z^2
  const Matrix lhs = frame_jet(aa, 1.0, 1);
  const Matrix rhs = frame_jet(a, 1.0, 1) * frame_jet(a, 1.0, 1);
  CHECK((lhs - rhs).norm() < 1e-14);

  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex z0 = 0.4 * rng.cnormal();
    const int rank = rng.uniform_int(1, 3);
    const int k = rng.uniform_int(1, 3);
    const HoloFrame f = random_frame(rng, rank, 2, z0);
    const HoloFrame g = random_frame(rng, rank, 2, z0);
    const Matrix big_fg = frame_jet(f * g, z0, k);
    const Matrix prod = frame_jet(f, z0, k) * frame_jet(g, z0, k);
    CHECK((big_fg - prod).norm() < 1e-10 * (1.0 + prod.norm()));
  }
}

TEST_CASE("det of the frame jet is det(A)^(k+1)") {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex z0 = 0.4 * rng.cnormal();
    const int rank = rng.uniform_int(1, 3);
    const int k = rng.uniform_int(0, 3);
    const HoloFrame f = random_frame(rng, rank, 2, z0);
    const Complex lhs = frame_jet(f, z0, k).determinant();
    const Complex rhs = std::pow(Complex(f.eval(z0).determinant()), k + 1);
    CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("frame-change law of the jet metric") {
  // Identity frame: exact zero.
  CHECK(frame_change_residual(MetricModel::power(1.0), HoloFrame::identity(1), 0.2, 2) == 0.0);

  // Flat rank-2 metric with an elementary frame.
  const MetricModel flat = MetricModel::diag({MetricModel::poly({1.0}), MetricModel::poly({1.0})});
  const HoloFrame a({{Polynomial(std::vector<Complex>{1.0}), Polynomial::variable()},
                     {Polynomial(), Polynomial(std::vector<Complex>{1.0})}});
  CHECK(frame_change_residual(flat, a, Complex(0.3, 0.1), 2) < 1e-10);

  // Rank-1 disk metric with a scalar frame.
  const HoloFrame s = HoloFrame::scalar(Polynomial(std::vector<Complex>{1.0, 0.5}));
  CHECK(frame_change_residual(MetricModel::power(1.0), s, 0.2, 2) < 1e-10);
}

TEST_CASE("frame-change law on random frames and models") {
  Rng rng(41);
  const MetricModel m1 = MetricModel::power(2.0);
  const MetricModel m2 = MetricModel::diag({MetricModel::power(1.0), MetricModel::exponential()});
  for (int trial = 0; trial < 15; ++trial) {
    const Complex z0 = 0.35 * rng.cnormal();
    const int k = rng.uniform_int(0, 3);
    CHECK(frame_change_residual(m1, random_frame(rng, 1, 2, z0), z0, k) < 1e-9);
    CHECK(frame_change_residual(m2, random_frame(rng, 2, 2, z0), z0, k) < 1e-9);
  }
}

TEST_CASE("partial trace sums the diagonal blocks") {
  Matrix m(4, 4);
  m << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16;
  Matrix expect(2, 2);
  expect << 12, 14, 20, 22;  // top-left + bottom-right blocks
  CHECK((partial_trace(m, 2) - expect).norm() == 0.0);

  CHECK((partial_trace(Matrix::Identity(6, 6), 2) - 3.0 * Matrix::Identity(2, 2)).norm() == 0.0);
  CHECK(partial_trace(m, 1)(0, 0) == Complex(34.0));  // ordinary trace
  CHECK_THROWS_AS((void)partial_trace(m, 3), FrameMismatch);
}
