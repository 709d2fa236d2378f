#pragma once

#include "ipaal/oracles.hpp"

namespace ipaal {

struct AugLagEval {
  double value = 0.0;       // f(z) + h(z) + (1-theta)<p, Az-b> + (c/2)|Az-b|^2
  Vector smooth_gradient;   // gradient of the h-free part; undefined if value = +inf
};

/// Evaluates the theta-augmented Lagrangian at (z, p).  theta = 0 gives the
/// classical augmented Lagrangian, theta = 1 the quadratic penalty (the
/// multiplier term drops out entirely).
AugLagEval aug_lagrangian(const ProblemSpec& problem, double theta, double c,
                          const Vector& z, const Vector& p);

}  // namespace ipaal
