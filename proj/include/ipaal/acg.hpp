#pragma once

#include "ipaal/oracles.hpp"

#include <stdexcept>

namespace ipaal {

/// Strongly convex composite subproblem  min psi_s(x) + psi_n(x)  with
///   psi_n(x) = h_scale * h(x) + (quad_coeff/2) |x - quad_center|^2.
/// psi_s must be convex with curvature at most M_s on dom h; psi_n is
/// mu-strongly convex with mu = quad_coeff.
struct CompositeSubproblem {
  std::function<double(const Vector&)> smooth_value;
  std::function<Vector(const Vector&)> smooth_gradient;
  ProxOracle h;
  double h_scale = 1.0;
  double quad_coeff = 0.0;
  Vector quad_center;
  double M_s = 0.0;
  double mu = 0.0;

  double nonsmooth_value(const Vector& y) const {
    const double hy = h.value(y);
    if (hy == kInf) return kInf;
    return h_scale * hy + 0.5 * quad_coeff * (y - quad_center).squaredNorm();
  }
};

/// Affine lower model Gamma(y) = <slope, y> + intercept.
struct AffineModel {
  Vector slope;
  double intercept = 0.0;
  double operator()(const Vector& y) const { return slope.dot(y) + intercept; }
};

struct AcgState {
  double A = 0.0;
  Vector x, y, y0;
  AffineModel Gamma;
  int j = 0;

  static AcgState init(const Vector& x0) {
    AcgState s;
    s.x = s.y = s.y0 = x0;
    s.Gamma.slope = Vector::Zero(x0.size());
    s.Gamma.intercept = 0.0;
    return s;
  }
};

/// Certificate u in d_eta(psi_s + psi_n)(x) produced by every accelerated step.
struct InnerCertificate {
  Vector x;
  Vector u;
  double eta = 0.0;
  int iterations = 0;
};

/// Raised when the accelerated loop hits its iteration cap; carries the best
/// certificate found.  Usually means the supplied curvature pair is wrong.
struct AcgMaxIterError : std::runtime_error {
  InnerCertificate best;
  AcgMaxIterError(std::string msg, InnerCertificate cert)
      : std::runtime_error(std::move(msg)), best(std::move(cert)) {}
};

/// One accelerated step; advances state in place and returns the certificate
/// for the new iterate.  Accepts mu = 0 (plain accelerated method).
InnerCertificate acg_step(AcgState& state, const CompositeSubproblem& sub);

/// ceil(1 + sqrt(M_s/mu) * max{log((1 + 1/sigma) sqrt(2 M_s)), 1}),
/// the guaranteed first-passage index of the acceptance inequality.
int acg_iteration_bound(double M_s, double mu, double sigma);

/// Runs accelerated steps from x0 until |u|^2 + 2 eta <= sigma^2 |x0 - x + u|^2.
/// Requires mu > 0 and 4 M_s >= mu.  max_iters < 0 selects ten times the
/// guaranteed bound.  Throws AcgMaxIterError on cap.
InnerCertificate acg_solve(const CompositeSubproblem& sub, const Vector& x0, double sigma,
                           int max_iters = -1);

}  // namespace ipaal
