#pragma once

#include "ipaal/oracles.hpp"
#include "ipaal/params.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ipaal {

/// Per-outer-iteration log entry.  The acceptance inequality
/// |v|^2 + 2 eps <= sigma^2 |v + z_prev - z|^2 holds for every record.
struct IterationRecord {
  int k = 0;
  Vector v;       // inner residual
  double eps = 0.0;
  Vector r;       // (z_k - z_{k-1}) - v_k
  double delta = 0.0;
  double v_hat_norm = 0.0;
  double feas = 0.0;  // |A z_hat - b|
  int acg_iters = 0;
};

/// Certified approximate stationary point:
/// v_hat in grad f(z_hat) + dh(z_hat) + A* p_hat.
struct RefinedPoint {
  Vector z_hat;
  Vector v_hat;
  Vector p_hat;
  double feas = kInf;
  double stationarity = kInf;  // |v_hat|
};

struct Diagnostics {
  std::optional<double> kappa_theta;       // undefined at theta = 0
  double sum_r_sq = 0.0;                   // sum of |r_k|^2 over all records
  std::optional<double> feas_bound_pred;   // (4/lambda) sqrt(kappa R0 / c), if R0 given
};

struct StaticOptions {
  int outer_cap = 10000;
  int acg_max_iters = -1;          // < 0: ten times the guaranteed bound
  double stationarity_scale = 1.0; // stop at |v_hat| <= rho_hat * this
};

struct StaticResult {
  RefinedPoint point;
  std::vector<IterationRecord> records;
  bool converged = false;
  long acg_total = 0;
};

/// Fixed-penalty proximal augmented Lagrangian loop: repeatedly solves the
/// prox subproblem with the accelerated inner method, refines the accepted
/// iterate, and updates the multiplier, stopping once |v_hat| meets the
/// stationarity tolerance.  Feasibility of the output is only O(1/sqrt(c));
/// drive it with dynamic_solve to meet a feasibility tolerance.
StaticResult static_solve(const ProblemSpec& problem, double theta, double c, double rho_hat,
                          const Vector& z0, const Vector& p0, Variant variant,
                          const StaticOptions& opts = {});

enum class TerminationMode { Absolute, Relative };

std::string to_string(TerminationMode m);
TerminationMode termination_mode_from_string(const std::string& s);

struct SolverConfig {
  double theta = 1.0;
  Variant variant = Variant::Theoretical;
  double rho_hat = 1e-4;
  double eta_hat = 1e-4;
  TerminationMode mode = TerminationMode::Absolute;
  double c1 = 1.0;
  double penalty_factor = 5.0;
  bool warm_start = true;
  Vector z0;
  int outer_cap = 10000;
  int cycle_cap = 60;
  int acg_max_iters = -1;
  std::optional<double> R0_estimate;  // optional, feeds the feasibility-bound diagnostic
};

struct CycleStats {
  int cycle = 0;
  double c = 0.0;
  int outer_iters = 0;
  long acg_iters = 0;
  double v_hat_norm = 0.0;
  double feas = 0.0;
};

struct DynamicReport {
  std::vector<CycleStats> cycles;
  std::vector<IterationRecord> records;
  long acg_total = 0;
  int outer_total = 0;
  int cycle_count = 0;
  double final_c = 0.0;
  double stationarity = 0.0;
  double feasibility = 0.0;
  double stationarity_rel = 0.0;  // |v_hat| / (|grad f(z0)| + 1)
  double feasibility_rel = 0.0;   // |A z_hat - b| / (|A z0 - b| + 1)
  bool converged = false;
  Diagnostics diagnostics;
};

/// Penalty-escalation driver: runs static solves, multiplying c by
/// penalty_factor until the feasibility tolerance holds.  Warm start (on by
/// default) chains each static call from the previous refined pair.
std::pair<RefinedPoint, DynamicReport> dynamic_solve(const ProblemSpec& problem,
                                                     const SolverConfig& config);

/// kappa(theta) = 1 + 16 (1 - theta) / (theta tau(theta)); equals 1 at theta = 1.
double kappa_theta(double theta);

/// Predicted feasibility level (4/lambda) sqrt(kappa(theta) R0 / c) for a
/// caller-supplied estimate of the initial proximal gap R0.
double feasibility_bound(double R0_est, double theta, double lambda, double c);

}  // namespace ipaal
