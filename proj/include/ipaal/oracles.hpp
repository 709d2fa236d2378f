#pragma once

#include <Eigen/Core>

#include <functional>
#include <limits>

namespace ipaal {

using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Curvature pair of a smooth function: f + (m/2)|.|^2 is convex on its
/// domain and the gradient of f is L-Lipschitz, with 0 < m <= L.
struct Curvature {
  double m = 0.0;
  double L = 0.0;
};

/// Value/gradient oracle for a differentiable (possibly nonconvex) function.
/// Callables must be safe to invoke concurrently.
struct SmoothOracle {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  Curvature curvature;
};

/// Oracle for a proper closed convex function h.
///
/// prox(w, t) = argmin_u { h(u) + |u - w|^2 / (2 t) },  t > 0.
/// value may return +inf outside dom h; prox outputs always lie in dom h.
struct ProxOracle {
  std::function<Vector(const Vector&, double)> prox;
  std::function<double(const Vector&)> value;
};

/// Linear operator A together with the right-hand side b of Az = b and a
/// valid upper bound on the operator norm |A|.
struct LinearMap {
  std::function<Vector(const Vector&)> apply;    // z -> Az
  std::function<Vector(const Vector&)> adjoint;  // p -> A* p
  double norm_bound = 0.0;
  Vector rhs;

  Vector residual(const Vector& z) const { return apply(z) - rhs; }
};

/// The full problem min { f(z) + h(z) : Az = b }.
///
/// cbar is the penalty level at which f + h + (cbar/2)|Az-b|^2 is known to be
/// bounded below; 0 is valid whenever the objective itself is bounded below
/// (always the case for bounded dom h).
struct ProblemSpec {
  SmoothOracle f;
  ProxOracle h;
  LinearMap constraint;
  double cbar = 0.0;
};

}  // namespace ipaal
