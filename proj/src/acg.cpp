#include "ipaal/acg.hpp"

#include <cassert>
#include <cmath>

namespace ipaal {

InnerCertificate acg_step(AcgState& state, const CompositeSubproblem& sub) {
  const double mu = sub.mu;
  const double Ms = sub.M_s;
  const double Aj = state.A;

  const double a = mu * Aj + 1.0;
  const double Anext = Aj + (a + std::sqrt(a * a + 4.0 * Ms * a * Aj)) / (2.0 * Ms);
  if (!(Anext > Aj) || !std::isfinite(Anext))
    throw std::runtime_error("acg_step: accumulator failed to increase (bad M_s?)");
  const double w_old = Aj / Anext;
  const double w_new = (Anext - Aj) / Anext;

  const Vector x_tilde = w_old * state.x + w_new * state.y;
  const Vector grad = sub.smooth_gradient(x_tilde);
  // linearization of psi_s at x_tilde folded into the affine model
  state.Gamma.slope = w_old * state.Gamma.slope + w_new * grad;
  state.Gamma.intercept = w_old * state.Gamma.intercept +
                          w_new * (sub.smooth_value(x_tilde) - grad.dot(x_tilde));

  // argmin Gamma + psi_n + |y - y0|^2/(2A) collapses to a single prox of h
  const double q = sub.quad_coeff + 1.0 / Anext;
  const Vector w = (sub.quad_coeff * sub.quad_center + state.y0 / Anext - state.Gamma.slope) / q;
  const Vector y_next = sub.h.prox(w, sub.h_scale / q);

  state.x = w_old * state.x + w_new * y_next;
  state.y = y_next;
  state.A = Anext;
  state.j += 1;

  InnerCertificate cert;
  cert.x = state.x;
  cert.u = (state.y0 - y_next) / Anext;
  cert.eta = sub.smooth_value(state.x) + sub.nonsmooth_value(state.x) - state.Gamma(y_next) -
             sub.nonsmooth_value(y_next) - cert.u.dot(state.x - y_next);
  cert.iterations = state.j;
  return cert;
}

int acg_iteration_bound(double M_s, double mu, double sigma) {
  const double t = (1.0 + 1.0 / sigma) * std::sqrt(2.0 * M_s);
  const double log_plus = std::max(std::log(t), 1.0);
  const double bound = std::ceil(1.0 + std::sqrt(M_s / mu) * log_plus);
  // huge curvature ratios (runaway penalty parameters) must not overflow int
  return static_cast<int>(std::min(bound, 1e8));
}

// Growth floor A_j >= (1/M_s) max{ j^2/4, (1 + sqrt(mu/(4 M_s)))^{2(j-1)} }.
[[maybe_unused]] static double accumulator_floor(double M_s, double mu, int j) {
  const double poly = 0.25 * static_cast<double>(j) * j;
  const double geo = std::pow(1.0 + std::sqrt(mu / (4.0 * M_s)), 2.0 * (j - 1));
  return std::max(poly, geo) / M_s;
}

InnerCertificate acg_solve(const CompositeSubproblem& sub, const Vector& x0, double sigma,
                           int max_iters) {
  if (!(sub.mu > 0.0)) throw std::domain_error("acg_solve requires mu > 0");
  if (!(4.0 * sub.M_s >= sub.mu)) throw std::domain_error("acg_solve requires 4 M_s >= mu");
  if (!(sigma > 0.0) || !(sigma < 1.0)) throw std::domain_error("sigma must lie in (0, 1)");
  if (max_iters < 0)
    max_iters = static_cast<int>(
        std::min(10LL * acg_iteration_bound(sub.M_s, sub.mu, sigma), 1000000000LL));

  [[maybe_unused]] const double scale =
      1.0 + std::abs(sub.smooth_value(x0) + sub.nonsmooth_value(x0)) + x0.squaredNorm();
  const double sigma_sq = sigma * sigma;

  AcgState state = AcgState::init(x0);
  InnerCertificate best;
  double best_gap = kInf;
  for (int it = 0; it < max_iters; ++it) {
    InnerCertificate cert = acg_step(state, sub);
    assert(cert.eta >= -1e-12 * scale);
    assert(state.A >= accumulator_floor(sub.M_s, sub.mu, state.j) * (1.0 - 1e-9));
    const double lhs = cert.u.squaredNorm() + 2.0 * cert.eta;
    const double rhs = sigma_sq * (x0 - cert.x + cert.u).squaredNorm();
    if (lhs <= rhs) return cert;
    if (lhs - rhs < best_gap) {
      best_gap = lhs - rhs;
      best = cert;
    }
  }
  throw AcgMaxIterError("acg_solve: acceptance inequality not reached in " +
                            std::to_string(max_iters) + " iterations",
                        std::move(best));
}

}  // namespace ipaal
