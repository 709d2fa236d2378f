#include "ipaal/lagrangian.hpp"
#include "ipaal/validate.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

using namespace ipaal;

namespace {

// quadratic test problem f(z) = z^T Q z / 2 + q^T z over R^dim, h = 0, A given
struct QuadProblem {
  Eigen::MatrixXd Q;
  Vector q;
  Eigen::MatrixXd A;
  Vector b;
  ProblemSpec spec;
};

QuadProblem make_quad(int dim, int l, std::uint64_t seed) {
  QuadProblem qp;
  Eigen::MatrixXd G(dim, dim);
  for (int i = 0; i < dim; ++i) G.col(i) = gaussian_vector(dim, seed + i);
  qp.Q = 0.5 * (G + G.transpose());
  qp.q = gaussian_vector(dim, seed + 100);
  qp.A = Eigen::MatrixXd(l, dim);
  for (int i = 0; i < l; ++i) qp.A.row(i) = gaussian_vector(dim, seed + 200 + i).transpose();
  qp.b = gaussian_vector(l, seed + 300);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(qp.Q, Eigen::EigenvaluesOnly);
  const double lam_min = es.eigenvalues()[0];
  const double lam_max = es.eigenvalues()[dim - 1];

  const Eigen::MatrixXd Q = qp.Q;
  const Vector q = qp.q;
  qp.spec.f.value = [Q, q](const Vector& z) { return 0.5 * z.dot(Q * z) + q.dot(z); };
  qp.spec.f.gradient = [Q, q](const Vector& z) { return Vector(Q * z + q); };
  qp.spec.f.curvature = {std::max(-lam_min, 1e-6), std::max(std::abs(lam_max), std::abs(lam_min))};
  qp.spec.h.prox = [](const Vector& w, double) { return w; };
  qp.spec.h.value = [](const Vector&) { return 0.0; };
  const Eigen::MatrixXd A = qp.A;
  const Vector b = qp.b;
  qp.spec.constraint.apply = [A](const Vector& z) { return Vector(A * z); };
  qp.spec.constraint.adjoint = [A](const Vector& p) { return Vector(A.transpose() * p); };
  qp.spec.constraint.rhs = b;
  qp.spec.constraint.norm_bound = qp.A.norm();  // Frobenius upper bound
  return qp;
}

}  // namespace

TEST_CASE("aug_lagrangian hand example") {
  // 1-D: f(z) = z^2, h = 0, A = [1], b = 0, theta = 0.5, c = 2, z = 1, p = 3
  ProblemSpec p;
  p.f.value = [](const Vector& z) { return z[0] * z[0]; };
  p.f.gradient = [](const Vector& z) { return Vector(2.0 * z); };
  p.f.curvature = {1e-6, 2.0};
  p.h.prox = [](const Vector& w, double) { return w; };
  p.h.value = [](const Vector&) { return 0.0; };
  p.constraint.apply = [](const Vector& z) { return z; };
  p.constraint.adjoint = [](const Vector& q) { return q; };
  p.constraint.rhs = Vector::Zero(1);
  p.constraint.norm_bound = 1.0;

  Vector z(1), mult(1);
  z[0] = 1.0;
  mult[0] = 3.0;
  const AugLagEval eval = aug_lagrangian(p, 0.5, 2.0, z, mult);
  CHECK(eval.value == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(eval.smooth_gradient[0] == doctest::Approx(5.5).epsilon(1e-14));

  CHECK_THROWS_AS(aug_lagrangian(p, 0.5, 0.0, z, mult), std::domain_error);
}

TEST_CASE("aug_lagrangian at feasible points and theta = 1") {
  QuadProblem qp = make_quad(8, 3, 11);
  // feasible point: least squares solution of A z = b
  const Vector zf = qp.A.colPivHouseholderQr().solve(qp.b);
  REQUIRE((qp.A * zf - qp.b).norm() < 1e-10);

  const Vector p1 = gaussian_vector(3, 5);
  const Vector p2 = gaussian_vector(3, 6);
  const double fh = qp.spec.f.value(zf);
  for (double theta : {0.0, 0.3, 1.0})
    CHECK(aug_lagrangian(qp.spec, theta, 7.0, zf, p1).value == doctest::Approx(fh).epsilon(1e-10));

  // theta = 1: value independent of the multiplier
  const Vector z = gaussian_vector(8, 77);
  const double a = aug_lagrangian(qp.spec, 1.0, 3.0, z, p1).value;
  const double bv = aug_lagrangian(qp.spec, 1.0, 3.0, z, p2).value;
  CHECK(std::abs(a - bv) <= 1e-12 * (1.0 + std::abs(a)));
}

TEST_CASE("aug_lagrangian smooth gradient matches finite differences") {
  QuadProblem qp = make_quad(6, 2, 23);
  const double theta = 0.4, c = 3.5;
  const Vector p = gaussian_vector(2, 9);
  const Vector z = gaussian_vector(6, 10);
  const AugLagEval at_z = aug_lagrangian(qp.spec, theta, c, z, p);

  const double step = 1e-6;
  for (int i = 0; i < 6; ++i) {
    Vector zp = z, zm = z;
    zp[i] += step;
    zm[i] -= step;
    // compare against the smooth part (h = 0 here anyway)
    const double fd = (aug_lagrangian(qp.spec, theta, c, zp, p).value -
                       aug_lagrangian(qp.spec, theta, c, zm, p).value) /
                      (2.0 * step);
    CHECK(std::abs(fd - at_z.smooth_gradient[i]) <=
          1e-6 * (1.0 + std::abs(at_z.smooth_gradient[i])));
  }
}

TEST_CASE("prox-regularized value is convex along segments for lambda < 1/m") {
  QuadProblem qp = make_quad(5, 2, 31);
  const double m = qp.spec.f.curvature.m;
  const double lambda = 0.7 / m;
  const Vector p = gaussian_vector(2, 3);
  const Vector z0 = gaussian_vector(5, 4);

  auto F = [&](const Vector& z) {
    return lambda * aug_lagrangian(qp.spec, 0.5, 2.0, z, p).value + 0.5 * (z - z0).squaredNorm();
  };
  for (int t = 0; t < 50; ++t) {
    const Vector a = gaussian_vector(5, 1000 + 2 * t);
    const Vector b = gaussian_vector(5, 1001 + 2 * t);
    const Vector mid = 0.5 * (a + b);
    const double scale = 1.0 + std::abs(F(a)) + std::abs(F(b));
    CHECK(F(mid) <= 0.5 * (F(a) + F(b)) + 1e-10 * scale);
  }
}

TEST_CASE("oracle sampling validators") {
  QuadProblem qp = make_quad(7, 3, 47);
  auto sampler = [](std::uint64_t i) { return gaussian_vector(7, 500 + i); };
  CHECK(check_gradient_lipschitz(qp.spec.f, sampler, 100).ok);
  CHECK(check_lower_curvature(qp.spec.f, sampler, 100).ok);
  CHECK(check_adjoint_consistency(qp.spec.constraint, 7, 81, 100).ok);
  CHECK(check_norm_bound(qp.spec.constraint, 7, 82, 100).ok);

  // a deliberately wrong L is caught
  SmoothOracle bad = qp.spec.f;
  bad.curvature.L = qp.spec.f.curvature.L / 50.0;
  CHECK_FALSE(check_gradient_lipschitz(bad, sampler, 100).ok);
}
