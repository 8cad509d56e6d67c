#pragma once

#include "jetcurv/models.hpp"

namespace jetcurv {

/**
 * Finite-difference oracle configuration.  The oracle certifies base-metric
 * derivatives up to total order `max_order`; everything above the base layer
 * is checked by independent-route cross-checks instead.
 *
 * `step` is a floor; with `auto_step` enabled (the default) the base step is
 * scaled with the total derivative order, since at double precision a fixed
 * small step is destroyed by cancellation once p + q exceeds ~3.
 * `richardson_levels` is the depth of the extrapolation table (steps s, s/2,
 * s/4, ...); three levels are needed to reach 1e-6 relative error at total
 * order 4 on the model catalog.
 */
struct FDConfig {
  double step = 1e-4;
  int richardson_levels = 3;
  int max_order = 4;
  bool auto_step = true;
};

/**
 * Mixed Wirtinger partial d^{p+q} h / dz^p dconj(z)^q at z0, computed from
 * iterated central differences in the real and imaginary directions
 * (dz = (dx - i dy)/2, dconj(z) = (dx + i dy)/2) with Richardson
 * extrapolation.  Independent of the jet arithmetic by construction.
 */
Matrix fd_partial(const MetricModel& model, Complex z0, int p, int q, const FDConfig& cfg = {});

}  // namespace jetcurv
