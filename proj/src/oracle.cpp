#include "jetcurv/oracle.hpp"

#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace jetcurv {

namespace {

// Composed difference stencil: offsets are Gaussian integers (a + i b) in
// units of the step; coefficients carry an implicit factor step^-(p+q).
using Stencil = std::map<std::pair<int, int>, Complex>;

void apply_wirtinger_factor(Stencil& st, bool conjugate) {
  // One central-difference factor of dz (or dconj z):
  //   [f(z+s) - f(z-s) -/+ i (f(z+is) - f(z-is))] / (4 s).
  const Complex iunit(0.0, 1.0);
  const Complex yc = conjugate ? iunit : -iunit;
  Stencil out;
  for (const auto& [off, c] : st) {
    out[{off.first + 1, off.second}] += 0.25 * c;
    out[{off.first - 1, off.second}] -= 0.25 * c;
    out[{off.first, off.second + 1}] += 0.25 * yc * c;
    out[{off.first, off.second - 1}] -= 0.25 * yc * c;
  }
  st = std::move(out);
}

Stencil wirtinger_stencil(int p, int q) {
  Stencil st;
  st[{0, 0}] = 1.0;
  for (int i = 0; i < p; ++i) apply_wirtinger_factor(st, false);
  for (int i = 0; i < q; ++i) apply_wirtinger_factor(st, true);
  return st;
}

Matrix evaluate_stencil(const MetricModel& model, Complex z0, const Stencil& st, double step,
                        int total_order, int rank) {
  Matrix acc = Matrix::Zero(rank, rank);
  for (const auto& [off, c] : st)
    acc += c * model.eval(z0 + Complex(off.first * step, off.second * step));
  return acc / std::pow(step, total_order);
}

// Base (largest) Richardson step per total order, tuned on the model catalog
// so that truncation and the stencil-size * eps cancellation floor balance.
double base_step(int total_order, int levels, const FDConfig& cfg) {
  if (!cfg.auto_step) return cfg.step;
  static constexpr double kTable[9] = {2e-2, 2e-2,   2e-2, 2e-2, 1.6e-2,
                                       2.5e-2, 2.5e-2, 3e-2, 3e-2};
  const int m = std::min(total_order, 8);
  double s = kTable[m];
  if (levels < 3) s *= 0.5;
  return std::max(s, cfg.step);
}

}  // namespace

Matrix fd_partial(const MetricModel& model, Complex z0, int p, int q, const FDConfig& cfg) {
  if (p < 0 || q < 0) throw OrderRange("fd_partial: negative order");
  const int m = p + q;
  if (m > cfg.max_order) throw OrderRange("fd_partial: order exceeds FDConfig::max_order");
  if (!(cfg.step > 0.0) || cfg.richardson_levels < 1) throw ConfigError("fd_partial: bad FDConfig");

  const int rank = model.rank();
  if (m == 0) return model.eval(z0);

  const int levels = cfg.richardson_levels;
  double s = base_step(m, levels, cfg);

  // The stencil reaches m * s from z0; keep it inside the domain.
  const double radius = model.domain_radius();
  if (std::isfinite(radius)) {
    const double room = 0.98 * radius - std::abs(z0);
    if (room <= 0.0) throw DomainError("fd_partial: insufficient domain margin");
    if (m * s > room) {
      s = room / m;
      if (s < 1e-5) throw DomainError("fd_partial: insufficient domain margin for the stencil");
    }
  }

  const Stencil st = wirtinger_stencil(p, q);

  std::vector<Matrix> table(static_cast<size_t>(levels));
  for (int j = 0; j < levels; ++j)
    table[static_cast<size_t>(j)] = evaluate_stencil(model, z0, st, s / std::ldexp(1.0, j), m, rank);
  // Error series in even powers of the step.
  for (int lev = 1; lev < levels; ++lev) {
    const double w = std::ldexp(1.0, 2 * lev);  // 4^lev
    for (int j = levels - 1; j >= lev; --j)
      table[static_cast<size_t>(j)] =
          (w * table[static_cast<size_t>(j)] - table[static_cast<size_t>(j) - 1]) / (w - 1.0);
  }

  Matrix result = table[static_cast<size_t>(levels) - 1];
  // The metric is real-valued (Hermitian), so the (p, p) partial matrix is
  // Hermitian; project out the antisymmetric noise.
  if (p == q) result = hermitized(result);
  return result;
}

}  // namespace jetcurv
