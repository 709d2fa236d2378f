#include "ipaal/refine.hpp"

#include <cmath>
#include <stdexcept>

namespace ipaal {

RefinementOutput refine(const RefinementInput& input) {
  const double lambda = input.lambda;
  if (!(lambda > 0.0)) throw std::domain_error("refine: lambda must be positive");
  const double denom = lambda * input.M + 1.0;

  // g_lam = lambda g + |.-z_minus|^2/2 - <v,.>
  const Vector grad_g_z = input.g_gradient(input.z);
  const Vector grad_glam_z = lambda * grad_g_z + (input.z - input.z_minus) - input.v;

  RefinementOutput out;
  out.z_hat = input.h.prox(input.z - grad_glam_z / denom, lambda / denom);
  out.v_hat = ((input.v + input.z_minus - input.z) + denom * (input.z - out.z_hat)) / lambda +
              input.g_gradient(out.z_hat) - grad_g_z;

  auto glam_plus_hlam = [&](const Vector& u) {
    const double hu = input.h.value(u);
    if (hu == kInf) return kInf;
    return lambda * (input.g_value(u) + hu) + 0.5 * (u - input.z_minus).squaredNorm() -
           input.v.dot(u);
  };
  const double at_z = glam_plus_hlam(input.z);
  const double at_zhat = glam_plus_hlam(out.z_hat);
  if (at_zhat == kInf)
    throw std::runtime_error("refine: prox output left dom h (broken ProxOracle)");
  out.delta = at_z - at_zhat;
  out.scale = 1.0 + std::abs(input.g_value(input.z)) + input.z.norm() + input.z_minus.norm();
  return out;
}

bool check_delta_bound(const RefinementOutput& output, double eps) {
  return output.delta <= eps + 1e-10 * output.scale;
}

}  // namespace ipaal
