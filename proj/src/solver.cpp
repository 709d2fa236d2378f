#include "ipaal/solver.hpp"

#include "ipaal/acg.hpp"
#include "ipaal/log.hpp"
#include "ipaal/refine.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ipaal {

std::string to_string(TerminationMode m) {
  return m == TerminationMode::Absolute ? "absolute" : "relative";
}

TerminationMode termination_mode_from_string(const std::string& s) {
  if (s == "absolute") return TerminationMode::Absolute;
  if (s == "relative") return TerminationMode::Relative;
  throw std::invalid_argument("unknown termination mode '" + s + "' (expected absolute|relative)");
}

double kappa_theta(double theta) {
  return 1.0 + 16.0 * (1.0 - theta) / (theta * tau_theta(theta));
}

double feasibility_bound(double R0_est, double theta, double lambda, double c) {
  if (R0_est < 0.0) throw std::domain_error("R0 estimate must be nonnegative");
  return 4.0 / lambda * std::sqrt(kappa_theta(theta) * R0_est / c);
}

StaticResult static_solve(const ProblemSpec& problem, double theta, double c, double rho_hat,
                          const Vector& z0, const Vector& p0, Variant variant,
                          const StaticOptions& opts) {
  const ThetaParams params = ThetaParams::make(theta, problem.f.curvature.m, variant);
  if (variant == Variant::Theoretical && !(c > 2.0 * problem.cbar))
    throw std::invalid_argument("theoretical variant requires c > 2 cbar");
  if (!(rho_hat > 0.0)) throw std::invalid_argument("rho_hat must be positive");
  if (problem.h.value(z0) == kInf) throw std::invalid_argument("z0 must lie in dom h");

  const double lambda = params.lambda;
  const double tau = params.tau;
  const double nb = problem.constraint.norm_bound;
  const double L_c = problem.f.curvature.L + c * nb * nb;
  const double sigma = inner_sigma(params, L_c);
  const double M_s = lambda * L_c + tau;
  const double mu = 1.0 - tau;
  const double stop_level = rho_hat * opts.stationarity_scale;

  StaticResult result;
  Vector z = z0;
  Vector p = p0;

  for (int k = 1; k <= opts.outer_cap; ++k) {
    const Vector z_prev = z;
    const Vector p_prev = p;

    // Smooth part of the augmented Lagrangian at the current multiplier.
    auto g_value = [&problem, p_prev, theta, c](const Vector& x) {
      const Vector res = problem.constraint.residual(x);
      return problem.f.value(x) + (1.0 - theta) * p_prev.dot(res) + 0.5 * c * res.squaredNorm();
    };
    auto g_gradient = [&problem, p_prev, theta, c](const Vector& x) {
      const Vector res = problem.constraint.residual(x);
      return Vector(problem.f.gradient(x) +
                    problem.constraint.adjoint((1.0 - theta) * p_prev + c * res));
    };

    CompositeSubproblem sub;
    sub.smooth_value = [g_value, lambda, tau, z_prev](const Vector& x) {
      return lambda * g_value(x) + 0.5 * tau * (x - z_prev).squaredNorm();
    };
    sub.smooth_gradient = [g_gradient, lambda, tau, z_prev](const Vector& x) {
      return Vector(lambda * g_gradient(x) + tau * (x - z_prev));
    };
    sub.h = problem.h;
    sub.h_scale = lambda;
    sub.quad_coeff = 1.0 - tau;
    sub.quad_center = z_prev;
    sub.M_s = M_s;
    sub.mu = mu;

    const InnerCertificate cert = acg_solve(sub, z_prev, sigma, opts.acg_max_iters);
    z = cert.x;
    const Vector& v = cert.u;
    const double eps = cert.eta;

    RefinementInput rin;
    rin.g_value = g_value;
    rin.g_gradient = g_gradient;
    rin.M = L_c;
    rin.h = problem.h;
    rin.lambda = lambda;
    rin.z_minus = z_prev;
    rin.z = z;
    rin.v = v;
    const RefinementOutput ref = refine(rin);
    if (!check_delta_bound(ref, eps))
      throw std::runtime_error("static_solve: refinement gap exceeded the inner certificate "
                               "(inconsistent curvature or broken oracles)");

    IterationRecord rec;
    rec.k = k;
    rec.v = v;
    rec.eps = eps;
    rec.r = (z - z_prev) - v;
    rec.delta = ref.delta;
    rec.v_hat_norm = ref.v_hat.norm();
    rec.feas = problem.constraint.residual(ref.z_hat).norm();
    rec.acg_iters = cert.iterations;
    result.acg_total += cert.iterations;

#ifndef NDEBUG
    {
      const double lhs = v.squaredNorm() + 2.0 * eps;
      const double rhs = sigma * sigma * rec.r.squaredNorm();
      assert(lhs <= rhs * (1.0 + 1e-12) + 1e-300);
      assert(v.norm() <= sigma * rec.r.norm() * (1.0 + 1e-10) + 1e-15);
      const double dpos = std::max(ref.delta, 0.0);
      assert(lambda * rec.v_hat_norm <=
             rec.r.norm() + 2.0 * std::sqrt(2.0 * (lambda * L_c + 1.0) * dpos) +
                 1e-10 * ref.scale);
      assert((ref.z_hat - z).norm() <=
             std::sqrt(2.0 * dpos / (lambda * L_c + 1.0)) + 1e-10 * ref.scale);
    }
#endif

    const bool stop = rec.v_hat_norm <= stop_level;
    RefinedPoint cand;
    cand.z_hat = ref.z_hat;
    cand.v_hat = ref.v_hat;
    cand.p_hat = (1.0 - theta) * p_prev + c * problem.constraint.residual(ref.z_hat);
    cand.feas = rec.feas;
    cand.stationarity = rec.v_hat_norm;
    if (cand.stationarity < result.point.stationarity) result.point = cand;
    result.records.push_back(std::move(rec));

    if (stop) {
      result.point = std::move(cand);
      result.converged = true;
      return result;
    }
    p = (1.0 - theta) * p_prev + c * problem.constraint.residual(z);
  }
  log::warn("static_solve: outer cap %d reached at c=%.3g (best |v_hat|=%.3g)", opts.outer_cap, c,
            result.point.stationarity);
  return result;  // best-so-far, converged = false
}

std::pair<RefinedPoint, DynamicReport> dynamic_solve(const ProblemSpec& problem,
                                                     const SolverConfig& config) {
  if (!(config.rho_hat > 0.0) || !(config.eta_hat > 0.0))
    throw std::invalid_argument("tolerances must be positive");
  if (!(config.penalty_factor > 1.0))
    throw std::invalid_argument("penalty_factor must exceed 1");
  if (config.z0.size() == 0) throw std::invalid_argument("z0 is required");
  if (config.variant == Variant::Theoretical && !(config.c1 > 2.0 * problem.cbar))
    throw std::invalid_argument("theoretical variant requires c1 > 2 cbar");

  const double grad_norm0 = problem.f.gradient(config.z0).norm() + 1.0;
  const double feas_norm0 = problem.constraint.residual(config.z0).norm() + 1.0;
  const bool relative = config.mode == TerminationMode::Relative;
  const double feas_level = config.eta_hat * (relative ? feas_norm0 : 1.0);

  StaticOptions sopts;
  sopts.outer_cap = config.outer_cap;
  sopts.acg_max_iters = config.acg_max_iters;
  sopts.stationarity_scale = relative ? grad_norm0 : 1.0;

  DynamicReport report;
  RefinedPoint point;
  const int l = static_cast<int>(problem.constraint.rhs.size());
  double c = config.c1;
  Vector z_start = config.z0;
  Vector p_start = Vector::Zero(l);

  for (int cycle = 1; cycle <= config.cycle_cap; ++cycle) {
    StaticResult sr =
        static_solve(problem, config.theta, c, config.rho_hat, z_start, p_start, config.variant,
                     sopts);
    point = sr.point;

    CycleStats cs;
    cs.cycle = cycle;
    cs.c = c;
    cs.outer_iters = static_cast<int>(sr.records.size());
    cs.acg_iters = sr.acg_total;
    cs.v_hat_norm = point.stationarity;
    cs.feas = point.feas;
    report.cycles.push_back(cs);
    report.acg_total += sr.acg_total;
    report.outer_total += cs.outer_iters;
    report.cycle_count = cycle;
    for (auto& rec : sr.records) report.records.push_back(std::move(rec));
    log::debug("cycle %d: c=%.4g outer=%d acg=%ld |v_hat|=%.3e feas=%.3e", cycle, c,
               cs.outer_iters, cs.acg_iters, point.stationarity, point.feas);

    report.final_c = c;
    if (!sr.converged) break;  // stationarity unreachable at this c; report flagged
    if (point.feas <= feas_level) {
      report.converged = true;
      break;
    }
    c *= config.penalty_factor;
    if (config.warm_start) {
      z_start = point.z_hat;
      p_start = point.p_hat;
    } else {
      z_start = config.z0;
      p_start = Vector::Zero(l);
    }
  }

  report.stationarity = point.stationarity;
  report.feasibility = point.feas;
  report.stationarity_rel = point.stationarity / grad_norm0;
  report.feasibility_rel = point.feas / feas_norm0;
  for (const auto& rec : report.records) report.diagnostics.sum_r_sq += rec.r.squaredNorm();
  if (config.theta > 0.0) report.diagnostics.kappa_theta = kappa_theta(config.theta);
  if (config.R0_estimate) {
    const ThetaParams params =
        ThetaParams::make(config.theta, problem.f.curvature.m, config.variant);
    report.diagnostics.feas_bound_pred =
        feasibility_bound(*config.R0_estimate, config.theta, params.lambda, report.final_c);
  }
  return {point, report};
}

}  // namespace ipaal
