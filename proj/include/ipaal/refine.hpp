#pragma once

#include "ipaal/oracles.hpp"

namespace ipaal {

/// Input of the refinement step: an inexact solution z (with residual v) of
///   min_u  lambda (g + h)(u) + |u - z_minus|^2 / 2,
/// where grad g is M-Lipschitz on dom h.
struct RefinementInput {
  std::function<double(const Vector&)> g_value;
  std::function<Vector(const Vector&)> g_gradient;
  double M = 0.0;
  ProxOracle h;
  double lambda = 0.0;
  Vector z_minus;
  Vector z;
  Vector v;
};

/// Refined point z_hat with v_hat in grad g(z_hat) + dh(z_hat) and the
/// computable gap delta (>= 0 in exact arithmetic; raw value kept).
struct RefinementOutput {
  Vector z_hat;
  Vector v_hat;
  double delta = 0.0;
  double scale = 1.0;  // 1 + |g(z)| + |z| + |z_minus|, fixed at entry
};

RefinementOutput refine(const RefinementInput& input);

/// delta <= eps (+ roundoff slack); guaranteed whenever (z, v, eps) carries a
/// valid eps-subdifferential certificate for the proximal subproblem.
bool check_delta_bound(const RefinementOutput& output, double eps);

}  // namespace ipaal
