#pragma once

#include <string>

namespace ipaal {

/// Parameter policy for a solve.  Theoretical derives the stepsize and the
/// inner acceptance parameter from theta; Constant uses the aggressive fixed
/// setting lambda = 0.5/m, sigma^2 = 0.5 (theta = 0 is only legal here).
enum class Variant { Theoretical, Constant };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

/// tau(theta) = theta/(16 - 17 theta) for theta <= 16/19, else 1/2.
/// Continuous and nondecreasing on (0, 1]; range (0, 1/2].
double tau_theta(double theta);

/// The unique positive root of
///   (3/4 + 2(1-theta)(3 tau + 1)/(theta tau)) s^2 + ((8-7 theta)/(2 theta)) s - 1/8 = 0
/// with tau = tau_theta(theta), computed in the rationalized form
/// s = 0.25 / (b + sqrt(b^2 + a/2)).  Always <= 1/2.
double sigma_theta(double theta);

/// Residual of the defining quadratic at s (diagnostic; ~0 at sigma_theta).
double sigma_theta_residual(double theta, double s);

struct ThetaParams {
  double theta = 1.0;
  double tau = 0.5;          // prox split weight
  double sigma_theta = 0.0;  // theta-derived cap on the inner tolerance
  double lambda = 0.0;       // prox stepsize
  Variant variant = Variant::Theoretical;

  /// Builds the parameter pack for lower curvature m > 0.
  /// Theoretical requires theta in (0,1]; Constant accepts theta in [0,1].
  static ThetaParams make(double theta, double m, Variant variant);
};

/// Inner acceptance parameter for a subproblem with smooth curvature
/// L_c = L + c|A|^2: theoretical takes min{1/sqrt(lambda L_c + 1), sigma_theta},
/// constant always uses sqrt(0.5).
double inner_sigma(const ThetaParams& params, double L_c);

}  // namespace ipaal
