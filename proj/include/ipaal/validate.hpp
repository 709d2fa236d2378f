#pragma once

#include "ipaal/oracles.hpp"

#include <cstdint>
#include <functional>

namespace ipaal {

/// Sampling-based checks of the oracle assumptions.  These are heuristic: a
/// pass does not certify (m, L), it only catches wrong ones quickly.
struct OracleCheckResult {
  bool ok = true;
  double worst = 0.0;  // largest violation found, in relative units
};

using PointSampler = std::function<Vector(std::uint64_t)>;

/// |grad f(z') - grad f(z)| <= L |z' - z| on sampled pairs.
OracleCheckResult check_gradient_lipschitz(const SmoothOracle& f, const PointSampler& sample,
                                           int trials, double tol = 1e-8);

/// f(z') - f(z) - <grad f(z), z'-z> >= -(m/2)|z'-z|^2 on sampled pairs.
OracleCheckResult check_lower_curvature(const SmoothOracle& f, const PointSampler& sample,
                                        int trials, double tol = 1e-8);

/// <A z, p> == <z, A* p> on sampled pairs, relative tolerance.
OracleCheckResult check_adjoint_consistency(const LinearMap& map, int point_dim,
                                            std::uint64_t seed, int trials, double tol = 1e-10);

/// norm_bound >= |A z| / |z| on sampled unit vectors.
OracleCheckResult check_norm_bound(const LinearMap& map, int point_dim, std::uint64_t seed,
                                   int trials, double tol = 1e-10);

/// Deterministic standard-normal-ish sampler (portable; Box-Muller over a
/// fully specified mt19937_64 stream).
Vector gaussian_vector(int dim, std::uint64_t seed);

}  // namespace ipaal
