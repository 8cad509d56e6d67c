#include <doctest.h>

#include "jetcurv/identities.hpp"
#include "jetcurv/rng.hpp"

using namespace jetcurv;

namespace {

std::vector<Complex> ring_grid(double radius, int count) {
  std::vector<Complex> g;
  for (int i = 0; i < count; ++i) {
    const double th = 2.0 * 3.14159265358979323846 * i / count;
    g.emplace_back(radius * std::cos(th), radius * std::sin(th));
  }
  return g;
}

}  // namespace

TEST_CASE("desnanot-jacobi on a concrete 3x3 matrix") {
  Matrix a(3, 3);
  a << 1, 2, 3, 4, 5, 6, 7, 8, 10;
  const IdentityVerdict v = desnanot_jacobi(a);
  CHECK(v.pass);
  CHECK(v.residual < 1e-14);
  // Minors: (-3)(-11) - (-6)(-6) = -3 = det(B) det(A) = 1 * (-3).
  CHECK(std::abs(Complex(a.determinant()) - Complex(-3.0)) < 1e-12);
}

TEST_CASE("desnanot-jacobi reduces to the determinant definition at size 2") {
  Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = rng.gaussian_matrix(2, 2);
    CHECK(desnanot_jacobi(a).residual < 1e-14);
  }
  CHECK_THROWS_AS((void)desnanot_jacobi(Matrix::Identity(1, 1)), Error);
}

TEST_CASE("desnanot-jacobi on random complex matrices") {
  Rng rng(67);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Matrix a = rng.gaussian_matrix(6, 6);
    worst = std::max(worst, desnanot_jacobi(a).residual);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("desnanot-jacobi with a nearly singular interior block") {
  Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(3, 7);
    Matrix a = rng.gaussian_matrix(n, n);
    // Force the leading block toward singularity (condition up to ~1e8).
    a.row(0).head(n - 2) = a.row(1).head(n - 2) * (1.0 + 1e-8 * rng.normal());
    CHECK(desnanot_jacobi(a).residual < 1e-9);
  }
}

TEST_CASE("failing verdicts carry a witness of the inputs") {
  Matrix a(3, 3);
  a << 1, 2, 3, 4, 5, 6, 7, 8, 10;
  const IdentityVerdict ok = desnanot_jacobi(a);
  CHECK(ok.witness.empty());
  const IdentityVerdict forced = desnanot_jacobi(a, 1e-30);
  if (!forced.pass) CHECK(!forced.witness.empty());
}

TEST_CASE("gram quotient identity on orthonormal and small cases") {
  CHECK(gram_quotient_check(Matrix::Identity(4, 4), 2).residual < 1e-14);

  // Vectors (1,0) and (1,1): det G = 1, A_sigma = (1), exponent n-r-1 = 0.
  Matrix g(2, 2);
  g << 1, 1, 1, 2;
  const IdentityVerdict v = gram_quotient_check(g, 1);
  CHECK(v.pass);
  CHECK(v.residual < 1e-14);
}

TEST_CASE("gram quotient identity on random PSD grams") {
  Rng rng(73);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const Matrix b = rng.gaussian_matrix(n, n);
    const Matrix g = b.adjoint() * b + 1e-3 * Matrix::Identity(n, n);
    for (int r = 1; r < n; ++r) worst = std::max(worst, gram_quotient_check(g, r).residual);
  }
  CHECK(worst < 1e-9);

  CHECK_THROWS_AS((void)gram_quotient_check(Matrix::Identity(3, 3), 0), Error);
  CHECK_THROWS_AS((void)gram_quotient_check(Matrix::Identity(3, 3), 3), Error);
}

TEST_CASE("determinant recursion checks across the catalog") {
  // n = 1: both sides equal lambda at the origin for the weighted disk metric.
  CHECK(det_recursion_check(MetricModel::power(1.0), 0.0, 1).residual < 1e-12);

  CHECK(det_recursion_check(MetricModel::diag({MetricModel::power(1.0), MetricModel::power(1.0)}),
                            0.0, 1)
            .residual < 1e-10);

  CHECK(det_recursion_check(MetricModel::exponential(), 0.2, 2).residual < 1e-10);

  const MetricModel mixed = MetricModel::diag({MetricModel::power(2.0), MetricModel::exponential()});
  for (int k = 1; k <= 3; ++k)
    CHECK(det_recursion_check(mixed, Complex(0.21, -0.13), k).residual < 1e-10);
}

TEST_CASE("line equivalence: scale twins agree, distinct weights do not") {
  const MetricModel p1 = MetricModel::power(1.0);
  const MetricModel p2 = MetricModel::power(2.0);
  const MetricModel twin = MetricModel::scale(Polynomial(std::vector<Complex>{1.0, 0.5}), p1);
  const auto grid = ring_grid(0.5, 12);

  const EquivalenceVerdict same = line_equiv_test(p1, twin, grid, 1e-8);
  CHECK(same.equivalent);
  CHECK(same.max_deviation < 1e-8);

  const EquivalenceVerdict diff = line_equiv_test(p1, p2, grid, 1e-8);
  CHECK(!diff.equivalent);
  CHECK(diff.max_deviation >= 0.5);

  const EquivalenceVerdict self = line_equiv_test(p2, p2, grid, 1e-8);
  CHECK(self.equivalent);
  CHECK(self.max_deviation == 0.0);
}

TEST_CASE("determinant-bundle equivalence agrees with the line test") {
  const MetricModel p1 = MetricModel::power(1.0);
  const MetricModel p2 = MetricModel::power(2.0);
  const MetricModel twin = MetricModel::scale(Polynomial(std::vector<Complex>{1.0, 0.5}), p1);
  const auto grid = ring_grid(0.45, 10);

  const EquivalenceVerdict same = det_bundle_equiv_test(p1, twin, 1, grid, 1e-8);
  CHECK(same.equivalent);

  const EquivalenceVerdict diff = det_bundle_equiv_test(p1, p2, 1, grid, 1e-8);
  CHECK(!diff.equivalent);
  // K_det J_1 at the origin differs by 2(lambda+1): 4 vs 6.
  CHECK(diff.max_deviation >= 1.9);

  const EquivalenceVerdict self = det_bundle_equiv_test(p2, p2, 2, grid, 1e-8);
  CHECK(self.equivalent);
}

TEST_CASE("descent chain of the scalar jet invariants") {
  const MetricModel p1 = MetricModel::power(1.0);
  const MetricModel p2 = MetricModel::power(2.0);
  const MetricModel twin = MetricModel::scale(Polynomial(std::vector<Complex>{1.0, 0.5}), p1);
  const auto grid = ring_grid(0.4, 8);

  const DescentReport same = jet_descent_check(p1, twin, 3, grid, 1e-8);
  CHECK(same.first_disagreement == -1);
  CHECK(same.chain_consistent);

  const DescentReport diff = jet_descent_check(p1, p2, 3, grid, 1e-8);
  CHECK(diff.first_disagreement == 0);
  CHECK(diff.chain_consistent);

  const DescentReport self = jet_descent_check(p2, p2, 2, grid, 1e-8);
  CHECK(self.first_disagreement == -1);
  CHECK(self.chain_consistent);
}

TEST_CASE("descent tolerates disagreement that appears only at high jet levels") {
  // Perturb a metric by a tiny t^6 term: the level-0 invariant moves below
  // the tolerance, but det J_3 h contains sixth derivatives that amplify the
  // perturbation by large factorial factors.  Disagreement confined to high
  // levels is the allowed direction of the chain.
  const MetricModel base = MetricModel::poly({1.0, 1.0, 0.5, 0.25, 0.125, 0.0625});
  const MetricModel bumped =
      MetricModel::poly({1.0, 1.0, 0.5, 0.25, 0.125, 0.0625, 1e-7});
  const auto grid = ring_grid(0.3, 8);

  const DescentReport r = jet_descent_check(base, bumped, 3, grid, 1e-8);
  CHECK(r.agrees[0]);
  CHECK(!r.agrees[3]);
  CHECK(r.first_disagreement > 0);
  CHECK(r.chain_consistent);
}
