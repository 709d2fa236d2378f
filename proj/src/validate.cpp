#include "ipaal/validate.hpp"

#include <cmath>
#include <random>

namespace ipaal {

Vector gaussian_vector(int dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto u01 = [&] { return (gen() >> 11) * (1.0 / 9007199254740992.0); };
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    double u1 = u01(), u2 = u01();
    if (u1 <= 0.0) u1 = 1e-300;
    v[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  return v;
}

OracleCheckResult check_gradient_lipschitz(const SmoothOracle& f, const PointSampler& sample,
                                           int trials, double tol) {
  OracleCheckResult r;
  for (int t = 0; t < trials; ++t) {
    const Vector z = sample(2 * static_cast<std::uint64_t>(t));
    const Vector zp = sample(2 * static_cast<std::uint64_t>(t) + 1);
    const double lhs = (f.gradient(zp) - f.gradient(z)).norm();
    const double rhs = f.curvature.L * (zp - z).norm();
    const double viol = (lhs - rhs) / (1.0 + rhs);
    if (viol > r.worst) r.worst = viol;
  }
  r.ok = r.worst <= tol;
  return r;
}

OracleCheckResult check_lower_curvature(const SmoothOracle& f, const PointSampler& sample,
                                        int trials, double tol) {
  OracleCheckResult r;
  for (int t = 0; t < trials; ++t) {
    const Vector z = sample(2 * static_cast<std::uint64_t>(t));
    const Vector zp = sample(2 * static_cast<std::uint64_t>(t) + 1);
    const Vector d = zp - z;
    const double gap = f.value(zp) - f.value(z) - f.gradient(z).dot(d);
    const double floor = -0.5 * f.curvature.m * d.squaredNorm();
    const double scale = 1.0 + std::abs(f.value(z)) + d.squaredNorm();
    const double viol = (floor - gap) / scale;
    if (viol > r.worst) r.worst = viol;
  }
  r.ok = r.worst <= tol;
  return r;
}

OracleCheckResult check_adjoint_consistency(const LinearMap& map, int point_dim,
                                            std::uint64_t seed, int trials, double tol) {
  OracleCheckResult r;
  const int l = static_cast<int>(map.rhs.size());
  for (int t = 0; t < trials; ++t) {
    const Vector z = gaussian_vector(point_dim, seed + 2 * t);
    const Vector p = gaussian_vector(l, seed + 2 * t + 1);
    const double a = map.apply(z).dot(p);
    const double b = z.dot(map.adjoint(p));
    const double viol = std::abs(a - b) / (1.0 + std::abs(a) + std::abs(b));
    if (viol > r.worst) r.worst = viol;
  }
  r.ok = r.worst <= tol;
  return r;
}

OracleCheckResult check_norm_bound(const LinearMap& map, int point_dim, std::uint64_t seed,
                                   int trials, double tol) {
  OracleCheckResult r;
  for (int t = 0; t < trials; ++t) {
    Vector z = gaussian_vector(point_dim, seed + t);
    const double nz = z.norm();
    if (nz == 0.0) continue;
    z /= nz;
    const double viol = (map.apply(z).norm() - map.norm_bound) / (1.0 + map.norm_bound);
    if (viol > r.worst) r.worst = viol;
  }
  r.ok = r.worst <= tol;
  return r;
}

}  // namespace ipaal
