#include "ipaal/acg.hpp"
#include "ipaal/refine.hpp"
#include "ipaal/validate.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

using namespace ipaal;

namespace {

ProxOracle identity_prox() {
  ProxOracle h;
  h.prox = [](const Vector& w, double) { return w; };
  h.value = [](const Vector&) { return 0.0; };
  return h;
}

ProxOracle box_prox(double lo, double hi) {
  ProxOracle h;
  h.prox = [lo, hi](const Vector& w, double) {
    return Vector(w.cwiseMax(lo).cwiseMin(hi));
  };
  h.value = [lo, hi](const Vector& z) {
    return (z.minCoeff() >= lo - 1e-12 && z.maxCoeff() <= hi + 1e-12) ? 0.0 : kInf;
  };
  return h;
}

Vector scalar(double x) {
  Vector v(1);
  v[0] = x;
  return v;
}

// Indefinite quadratic g(x) = x^T S x / 2 + s^T x with known curvatures.
struct QuadG {
  Eigen::MatrixXd S;
  Vector s;
  double M = 0.0;        // Lipschitz constant of the gradient
  double lower_m = 0.0;  // weak convexity modulus
};

QuadG make_quad_g(int dim, std::uint64_t seed) {
  QuadG g;
  Eigen::MatrixXd G(dim, dim);
  for (int i = 0; i < dim; ++i) G.col(i) = gaussian_vector(dim, seed + i);
  g.S = 0.5 * (G + G.transpose());
  g.s = gaussian_vector(dim, seed + 99);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.S, Eigen::EigenvaluesOnly);
  g.M = std::max(std::abs(es.eigenvalues()[0]), std::abs(es.eigenvalues()[dim - 1]));
  g.lower_m = std::max(-es.eigenvalues()[0], 1e-6);
  return g;
}

}  // namespace

TEST_CASE("refine collapses to the prox center for g = 0, h = 0") {
  RefinementInput in;
  in.g_value = [](const Vector&) { return 0.0; };
  in.g_gradient = [](const Vector& z) { return Vector(Vector::Zero(z.size())); };
  in.M = 0.0;
  in.h = identity_prox();
  in.lambda = 0.8;
  in.z_minus = gaussian_vector(5, 1);
  in.z = gaussian_vector(5, 2);
  in.v = Vector::Zero(5);

  const RefinementOutput out = refine(in);
  CHECK((out.z_hat - in.z_minus).norm() <= 1e-12);
  CHECK(out.v_hat.norm() <= 1e-12);
  CHECK(out.delta == doctest::Approx(0.5 * (in.z - in.z_minus).squaredNorm()).epsilon(1e-12));
}

TEST_CASE("refine 1-D hand example") {
  // g(x) = x^2/2 (M = 1), h = 0, lambda = 1, z- = 0, z = 0.6, v = 0
  RefinementInput in;
  in.g_value = [](const Vector& z) { return 0.5 * z[0] * z[0]; };
  in.g_gradient = [](const Vector& z) { return z; };
  in.M = 1.0;
  in.h = identity_prox();
  in.lambda = 1.0;
  in.z_minus = scalar(0.0);
  in.z = scalar(0.6);
  in.v = scalar(0.0);

  const RefinementOutput out = refine(in);
  CHECK(out.z_hat[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(out.v_hat[0]) <= 1e-14);
  CHECK(out.delta == doctest::Approx(0.36).epsilon(1e-13));
  // inclusion: v_hat = g'(z_hat) = 0 since h = 0
}

TEST_CASE("prox-gradient fixed point refines to itself with v_hat = 0") {
  const int dim = 6;
  QuadG g = make_quad_g(dim, 71);
  // make g strongly convex so the fixed point is argmin g
  g.S += (g.lower_m + 1.0) * Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::MatrixXd S = g.S;
  const Vector s = g.s;
  const Vector z_star = S.ldlt().solve(-s);  // grad g = 0 here
  const double lambda = 0.8 / g.M;

  RefinementInput in;
  in.g_value = [S, s](const Vector& z) { return 0.5 * z.dot(S * z) + s.dot(z); };
  in.g_gradient = [S, s](const Vector& z) { return Vector(S * z + s); };
  in.M = g.M;
  in.h = identity_prox();
  in.lambda = lambda;
  in.z_minus = z_star;  // prox center at the minimizer: z solves the subproblem too
  in.z = z_star;
  in.v = Vector::Zero(dim);

  const RefinementOutput out = refine(in);
  CHECK((out.z_hat - z_star).norm() <= 1e-10 * out.scale);
  CHECK(out.v_hat.norm() <= 1e-10 * out.scale);
  CHECK(std::abs(out.delta) <= 1e-10 * out.scale);
}

TEST_CASE("exact subproblem solution gives delta = 0 and v_hat = grad g(z_hat)") {
  const int dim = 6;
  QuadG g = make_quad_g(dim, 73);
  const double lambda = 0.5 / g.lower_m;
  const Vector z_minus = gaussian_vector(dim, 5);
  // minimizer of lambda g + |.-z_minus|^2/2 (h = 0)
  const Eigen::MatrixXd H = lambda * g.S + Eigen::MatrixXd::Identity(dim, dim);
  const Vector z_star = H.ldlt().solve(z_minus - lambda * g.s);

  RefinementInput in;
  const Eigen::MatrixXd S = g.S;
  const Vector s = g.s;
  in.g_value = [S, s](const Vector& z) { return 0.5 * z.dot(S * z) + s.dot(z); };
  in.g_gradient = [S, s](const Vector& z) { return Vector(S * z + s); };
  in.M = g.M;
  in.h = identity_prox();
  in.lambda = lambda;
  in.z_minus = z_minus;
  in.z = z_star;
  in.v = Vector::Zero(dim);

  const RefinementOutput out = refine(in);
  CHECK((out.z_hat - z_star).norm() <= 1e-10 * out.scale);
  CHECK(std::abs(out.delta) <= 1e-10 * out.scale);
  // with h = 0 the inclusion collapses to equality with the gradient
  CHECK((out.v_hat - in.g_gradient(out.z_hat)).norm() <= 1e-9 * out.scale);
}

TEST_CASE("check_delta_bound boundary semantics") {
  RefinementOutput out;
  out.delta = 0.0;
  out.scale = 1.0;
  CHECK(check_delta_bound(out, 0.0));
  out.delta = 0.36;
  CHECK(check_delta_bound(out, 0.36));  // inclusive boundary
  out.delta = 0.36 + 1e-6;
  CHECK_FALSE(check_delta_bound(out, 0.36));
}

TEST_CASE("refinement of accepted inner certificates over 50 seeds") {
  const int dim = 8;
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t seed = 7000 + 137 * trial;
    QuadG g = make_quad_g(dim, seed);
    const double tau = 0.4;
    const double lambda = tau / g.lower_m;
    const Vector z_minus =
        gaussian_vector(dim, seed + 1000).cwiseMax(-1.0).cwiseMin(1.0);
    ProxOracle h = box_prox(-1.0, 1.0);

    const Eigen::MatrixXd S = g.S;
    const Vector s = g.s;
    auto g_value = [S, s](const Vector& z) { return 0.5 * z.dot(S * z) + s.dot(z); };
    auto g_gradient = [S, s](const Vector& z) { return Vector(S * z + s); };

    CompositeSubproblem sub;
    sub.smooth_value = [g_value, lambda, tau, z_minus](const Vector& x) {
      return lambda * g_value(x) + 0.5 * tau * (x - z_minus).squaredNorm();
    };
    sub.smooth_gradient = [g_gradient, lambda, tau, z_minus](const Vector& x) {
      return Vector(lambda * g_gradient(x) + tau * (x - z_minus));
    };
    sub.h = h;
    sub.h_scale = lambda;
    sub.quad_coeff = 1.0 - tau;
    sub.quad_center = z_minus;
    sub.M_s = lambda * g.M + tau;
    sub.mu = 1.0 - tau;

    const InnerCertificate cert = acg_solve(sub, z_minus, 0.3);

    RefinementInput in;
    in.g_value = g_value;
    in.g_gradient = g_gradient;
    in.M = g.M;
    in.h = h;
    in.lambda = lambda;
    in.z_minus = z_minus;
    in.z = cert.x;
    in.v = cert.u;
    const RefinementOutput out = refine(in);

    const double lamM1 = lambda * g.M + 1.0;
    const double dpos = std::max(out.delta, 0.0);
    CHECK(out.delta >= -1e-12 * out.scale);
    CHECK(check_delta_bound(out, cert.eta));
    CHECK(lambda * out.v_hat.norm() <=
          (in.v + in.z_minus - in.z).norm() + 2.0 * std::sqrt(2.0 * lamM1 * dpos) +
              1e-10 * out.scale);
    CHECK((out.z_hat - in.z).norm() <= std::sqrt(2.0 * dpos / lamM1) + 1e-10 * out.scale);

    // stationarity inclusion through the prox fixed-point identity (t = 1)
    const Vector d = out.v_hat - in.g_gradient(out.z_hat);
    const Vector back = in.h.prox(out.z_hat + d, 1.0);
    CHECK((back - out.z_hat).norm() <= 1e-8 * out.scale);
  }
}
