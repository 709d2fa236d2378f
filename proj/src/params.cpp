#include "ipaal/params.hpp"

#include <cmath>
#include <stdexcept>

namespace ipaal {

std::string to_string(Variant v) {
  return v == Variant::Theoretical ? "theoretical" : "constant";
}

Variant variant_from_string(const std::string& s) {
  if (s == "theoretical") return Variant::Theoretical;
  if (s == "constant") return Variant::Constant;
  throw std::invalid_argument("unknown variant '" + s + "' (expected theoretical|constant)");
}

static void require_theta(double theta) {
  if (!(theta > 0.0) || theta > 1.0)
    throw std::domain_error("theta must lie in (0, 1], got " + std::to_string(theta));
}

double tau_theta(double theta) {
  require_theta(theta);
  if (theta <= 16.0 / 19.0) return theta / (16.0 - 17.0 * theta);
  return 0.5;
}

double sigma_theta(double theta) {
  require_theta(theta);
  const double tau = tau_theta(theta);
  const double a = 0.75 + 2.0 * (1.0 - theta) * (3.0 * tau + 1.0) / (theta * tau);
  const double b = (8.0 - 7.0 * theta) / (2.0 * theta);
  // a s^2 + b s - 1/8 = 0 with a, b > 0; the positive root rationalized so no
  // cancellation occurs when b^2 dominates.
  return 0.25 / (b + std::sqrt(b * b + 0.5 * a));
}

double sigma_theta_residual(double theta, double s) {
  const double tau = tau_theta(theta);
  const double a = 0.75 + 2.0 * (1.0 - theta) * (3.0 * tau + 1.0) / (theta * tau);
  const double b = (8.0 - 7.0 * theta) / (2.0 * theta);
  return (a * s + b) * s - 0.125;
}

ThetaParams ThetaParams::make(double theta, double m, Variant variant) {
  if (!(m > 0.0)) throw std::domain_error("lower curvature m must be positive");
  ThetaParams p;
  p.variant = variant;
  p.theta = theta;
  if (variant == Variant::Constant) {
    if (theta < 0.0 || theta > 1.0)
      throw std::domain_error("theta must lie in [0, 1] for the constant variant");
    p.tau = 0.5;
    p.sigma_theta = std::sqrt(0.5);
    p.lambda = 0.5 / m;
    return p;
  }
  p.tau = tau_theta(theta);  // rejects theta <= 0 and theta > 1
  p.sigma_theta = ipaal::sigma_theta(theta);
  p.lambda = p.tau / m;
  return p;
}

double inner_sigma(const ThetaParams& params, double L_c) {
  if (params.variant == Variant::Constant) return std::sqrt(0.5);
  return std::min(1.0 / std::sqrt(params.lambda * L_c + 1.0), params.sigma_theta);
}

}  // namespace ipaal
