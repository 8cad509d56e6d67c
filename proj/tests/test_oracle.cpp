#include <doctest.h>

#include "jetcurv/oracle.hpp"

using namespace jetcurv;

TEST_CASE("order zero returns the plain evaluation") {
  const MetricModel m = MetricModel::power(2.0);
  const Complex z0(0.2, 0.3);
  CHECK((fd_partial(m, z0, 0, 0) - m.eval(z0)).norm() == 0.0);
}

TEST_CASE("mixed second partial of the weighted disk metric") {
  // d dbar (1 - z zbar)^{-1} = (1 + t) / (1 - t)^3 with t = |z|^2.
  const MetricModel m = MetricModel::power(1.0);
  const double t = 0.09;
  const double expect = (1.0 + t) / std::pow(1.0 - t, 3);  // ~1.446437
  const Complex got = fd_partial(m, 0.3, 1, 1)(0, 0);
  CHECK(std::abs(got - expect) / expect < 1e-6);
}

TEST_CASE("mixed second partial of the exponential metric at the origin") {
  const Complex got = fd_partial(MetricModel::exponential(), 0.0, 1, 1)(0, 0);
  CHECK(std::abs(got - 1.0) < 1e-8);
}

TEST_CASE("wirtinger consistency for real-valued metrics") {
  const MetricModel m = MetricModel::power(2.0);
  const Complex z0(0.25, -0.15);
  const Complex dz = fd_partial(m, z0, 1, 0)(0, 0);
  const Complex dzbar = fd_partial(m, z0, 0, 1)(0, 0);
  CHECK(std::abs(dz - std::conj(dzbar)) < 1e-8);
}

TEST_CASE("config validation") {
  FDConfig cfg;
  cfg.max_order = 4;
  CHECK_THROWS_AS((void)fd_partial(MetricModel::exponential(), 0.0, 3, 2, cfg), OrderRange);
  cfg.max_order = 6;
  cfg.step = -1.0;
  CHECK_THROWS_AS((void)fd_partial(MetricModel::exponential(), 0.0, 1, 1, cfg), ConfigError);
}

TEST_CASE("orders beyond the certification scope are still usable best-effort") {
  FDConfig cfg;
  cfg.max_order = 6;
  const MetricModel m = MetricModel::power(1.0);
  const Complex z0(0.2, 0.1);
  const Complex jet_val = m.lift(z0, {3, 3}).partial(3, 3)(0, 0);
  const Complex fd_val = fd_partial(m, z0, 3, 3, cfg)(0, 0);
  CHECK(std::abs(jet_val - fd_val) / (1.0 + std::abs(jet_val)) < 1e-3);
}

TEST_CASE("insufficient domain margin is reported") {
  FDConfig cfg;
  CHECK_THROWS_AS((void)fd_partial(MetricModel::power(1.0), Complex(0.999, 0.0), 1, 1, cfg),
                  DomainError);
}

TEST_CASE("oracle certifies the jet arithmetic over its full order scope") {
  const FDConfig cfg;  // total order <= max_order = 4

  const MetricModel models[] = {
      MetricModel::power(1.0),
      MetricModel::power(3.0),
      MetricModel::exponential(),
      MetricModel::poly({1.0, 1.0, 0.5, 0.25, 0.125, 0.0625}),
      MetricModel::kernel({1.0, 1.2, 1.5}, 1.0),
  };
  const Complex points[] = {Complex(0.30, 0.10), Complex(-0.17, 0.26), Complex(0.05, -0.33)};

  for (const auto& m : models)
    for (const Complex z0 : points) {
      const MatrixJet jet = m.lift(z0, {4, 4});
      for (int p = 0; p <= cfg.max_order; ++p)
        for (int q = 0; p + q <= cfg.max_order; ++q) {
          const Complex jet_val = jet.partial(p, q)(0, 0);
          const Complex fd_val = fd_partial(m, z0, p, q, cfg)(0, 0);
          const double rel = std::abs(jet_val - fd_val) / (1.0 + std::abs(jet_val));
          CAPTURE(p);
          CAPTURE(q);
          CAPTURE(z0.real());
          CHECK(rel < 1e-6);
        }
    }
}
