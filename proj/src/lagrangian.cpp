#include "ipaal/lagrangian.hpp"

#include <cmath>
#include <stdexcept>

namespace ipaal {

AugLagEval aug_lagrangian(const ProblemSpec& problem, double theta, double c,
                          const Vector& z, const Vector& p) {
  if (!(c > 0.0)) throw std::domain_error("penalty parameter c must be positive");
  AugLagEval out;
  const double hz = problem.h.value(z);
  if (std::isinf(hz)) {
    out.value = kInf;
    return out;
  }
  const Vector res = problem.constraint.residual(z);
  out.value = problem.f.value(z) + hz + (1.0 - theta) * p.dot(res) + 0.5 * c * res.squaredNorm();
  out.smooth_gradient =
      problem.f.gradient(z) + problem.constraint.adjoint((1.0 - theta) * p + c * res);
  return out;
}

}  // namespace ipaal
