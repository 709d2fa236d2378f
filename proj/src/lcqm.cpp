#include "ipaal/lcqm.hpp"

#include "ipaal/log.hpp"
#include "ipaal/validate.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

namespace ipaal::lcqm {

// ---- svec / smat -------------------------------------------------------------

static const double kSqrt2 = std::sqrt(2.0);

// Exact inverse of y = fl(x * sqrt2).  Plain division is off by one ulp for a
// sizable fraction of inputs; the true preimage, when one exists, lies within
// two ulps of the quotient.
static double unscale_sqrt2(double y) {
  double z = y / kSqrt2;
  if (z * kSqrt2 == y) return z;
  double up = z, down = z;
  for (int step = 0; step < 2; ++step) {
    up = std::nextafter(up, kInf);
    if (up * kSqrt2 == y) return up;
    down = std::nextafter(down, -kInf);
    if (down * kSqrt2 == y) return down;
  }
  return z;
}

Vector svec(const Matrix& X) {
  const int n = static_cast<int>(X.rows());
  Vector v(svec_dim(n));
  int k = 0;
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) v[k++] = (i == j) ? X(i, j) : X(i, j) * kSqrt2;
  return v;
}

Matrix smat(const Vector& v, int n) {
  Matrix X(n, n);
  int k = 0;
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) {
      if (i == j) {
        X(i, j) = v[k];
      } else {
        const double x = unscale_sqrt2(v[k]);
        X(i, j) = x;
        X(j, i) = x;
      }
      ++k;
    }
  return X;
}

// ---- projections -------------------------------------------------------------

Vector simplex_project(const Vector& y) {
  const int n = static_cast<int>(y.size());
  std::vector<double> s(y.data(), y.data() + n);
  std::sort(s.begin(), s.end(), std::greater<double>());
  double cum = 0.0, tau = 0.0;
  int rho = 0;
  for (int i = 0; i < n; ++i) {
    cum += s[i];
    const double t = (cum - 1.0) / (i + 1);
    if (s[i] - t > 0.0) {
      rho = i + 1;
      tau = t;
    }
  }
  (void)rho;
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = std::max(y[i] - tau, 0.0);
  return x;
}

Matrix spectraplex_prox(const Matrix& W, double /*stepsize*/) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(W);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectraplex_prox: eigendecomposition failed");
  const Vector lam = simplex_project(es.eigenvalues());
  Matrix Z = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  return ((Z + Z.transpose()) * 0.5).eval();
}

ProxOracle spectraplex_prox_oracle(int n, double membership_tol) {
  ProxOracle oracle;
  oracle.prox = [n](const Vector& w, double /*stepsize*/) {
    return svec(spectraplex_prox(smat(w, n)));
  };
  oracle.value = [n, membership_tol](const Vector& v) {
    const Matrix Z = smat(v, n);
    if (std::abs(Z.trace() - 1.0) > membership_tol) return kInf;
    Eigen::SelfAdjointEigenSolver<Matrix> es(Z, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()[0] < -membership_tol) return kInf;
    return 0.0;
  };
  return oracle;
}

// ---- operator norm -----------------------------------------------------------

NormEstimate operator_norm(const LinearMap& map, int point_dim, double tol, int max_iters,
                           std::uint64_t seed) {
  NormEstimate est;
  Vector v = gaussian_vector(point_dim, seed);
  double nv = v.norm();
  if (nv == 0.0) return est;
  v /= nv;
  double rayleigh = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    const Vector w = map.adjoint(map.apply(v));  // A* A v
    const double r = v.dot(w);
    est.iterations = it;
    if (r <= 0.0) {  // v is (numerically) in the null space; redraw once
      v = gaussian_vector(point_dim, seed + it);
      const double n2 = v.norm();
      if (n2 == 0.0) break;
      v /= n2;
      continue;
    }
    if (it > 1 && std::abs(r - rayleigh) <= tol * r) {
      est.value = std::sqrt(r) * (1.0 + 10.0 * tol);
      est.converged = true;
      return est;
    }
    rayleigh = r;
    const double nw = w.norm();
    if (nw == 0.0) break;
    v = w / nw;
  }
  est.value = std::sqrt(std::max(rayleigh, 0.0)) * (1.0 + 10.0 * tol);
  return est;  // converged = false
}

// ---- extreme eigenvalues -----------------------------------------------------

static EigPair extreme_dense(const std::function<Vector(const Vector&)>& op, int dim) {
  Matrix H(dim, dim);
  Vector e = Vector::Zero(dim);
  for (int j = 0; j < dim; ++j) {
    e[j] = 1.0;
    H.col(j) = op(e);
    e[j] = 0.0;
  }
  H = ((H + H.transpose()) * 0.5).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(H, Eigen::EigenvaluesOnly);
  return {es.eigenvalues()[0], es.eigenvalues()[dim - 1]};
}

// Lanczos with full reorthogonalization; extreme Ritz values converge to
// machine precision long before the cap for the spectra seen here.
static EigPair extreme_lanczos(const std::function<Vector(const Vector&)>& op, int dim,
                               std::uint64_t seed) {
  const int max_steps = std::min(dim, 500);
  Matrix V(dim, max_steps + 1);
  std::vector<double> alpha, beta;
  Vector v = gaussian_vector(dim, seed);
  v /= v.norm();
  V.col(0) = v;
  Vector w;
  EigPair prev{kInf, -kInf};
  for (int j = 0; j < max_steps; ++j) {
    w = op(V.col(j));
    const double a = V.col(j).dot(w);
    alpha.push_back(a);
    w -= a * V.col(j);
    if (j > 0) w -= beta[j - 1] * V.col(j - 1);
    // two-pass reorthogonalization against the whole basis
    for (int pass = 0; pass < 2; ++pass)
      w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w).eval();
    const double bnorm = w.norm();

    const int m = j + 1;
    if (m >= 8 || bnorm < 1e-14) {
      Matrix T = Matrix::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(T, Eigen::EigenvaluesOnly);
      EigPair cur{es.eigenvalues()[0], es.eigenvalues()[m - 1]};
      const double scale = std::max(std::abs(cur.min), std::abs(cur.max)) + 1e-30;
      if (bnorm < 1e-14 * scale) return cur;  // exact invariant subspace
      if (std::abs(cur.min - prev.min) <= 1e-12 * scale &&
          std::abs(cur.max - prev.max) <= 1e-12 * scale)
        return cur;
      prev = cur;
    }
    if (bnorm == 0.0) break;
    beta.push_back(bnorm);
    V.col(j + 1) = w / bnorm;
  }
  return prev;
}

EigPair extreme_eigenvalues(const std::function<Vector(const Vector&)>& op, int dim,
                            std::uint64_t seed) {
  if (dim <= 600) return extreme_dense(op, dim);
  return extreme_lanczos(op, dim, seed);
}

// ---- instance generation -----------------------------------------------------

static Matrix draw_matrix(Rng& rng, int n, double density) {
  Matrix M = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rng.u01() < density) M(i, j) = rng.u01();
  return M;
}

static Matrix operator_rows(const std::vector<Matrix>& mats, int N) {
  Matrix op(static_cast<int>(mats.size()), N);
  for (std::size_t r = 0; r < mats.size(); ++r) {
    const Matrix sym = ((mats[r] + mats[r].transpose()) * 0.5).eval();
    op.row(static_cast<int>(r)) = svec(sym).transpose();
  }
  return op;
}

LcqmInstance generate_instance(std::uint64_t seed, int l, int n, double density, double L_target,
                               double m_target) {
  if (l < 1 || n < 1) throw std::invalid_argument("lcqm: l and n must be >= 1");
  if (!(density > 0.0) || density > 1.0)
    throw std::invalid_argument("lcqm: density must lie in (0, 1]");
  if (!(m_target > 0.0) || !(L_target >= m_target))
    throw std::invalid_argument("lcqm: need L_target >= m_target > 0");

  LcqmInstance inst;
  inst.l = l;
  inst.n = n;
  inst.seed = seed;
  inst.density = density;
  inst.L_target = L_target;
  inst.m_target = m_target;

  Rng rng(seed);
  inst.A_mats.reserve(l);
  for (int i = 0; i < l; ++i) inst.A_mats.push_back(draw_matrix(rng, n, density));
  inst.B_mats.reserve(n);
  for (int j = 0; j < n; ++j) inst.B_mats.push_back(draw_matrix(rng, n, density));
  inst.C_mats.reserve(l);
  for (int i = 0; i < l; ++i) inst.C_mats.push_back(draw_matrix(rng, n, density));
  inst.b = Vector(l);
  for (int i = 0; i < l; ++i) inst.b[i] = rng.u01();
  inst.d = Vector(l);
  for (int i = 0; i < l; ++i) inst.d[i] = rng.u01();
  inst.D = Vector(n);
  for (int j = 0; j < n; ++j) inst.D[j] = rng.uniform(1.0, 1000.0);

  // Calibrate alpha1, alpha2 so the Hessian alpha1 C*C - alpha2 B*D^2B has
  // extreme eigenvalues (L_target, -m_target).  With H(t) = t M1 - M2, the
  // ratio lam_max/(-lam_min) is increasing in t; bisect on it, then scale.
  const int N = svec_dim(n);
  const Matrix B_op = operator_rows(inst.B_mats, N);
  const Matrix C_op = operator_rows(inst.C_mats, N);
  const Vector D2 = inst.D.array().square();
  if (C_op.squaredNorm() == 0.0)
    throw CalibrationError("lcqm: operator C is numerically zero; regenerate with a new seed");
  if ((D2.asDiagonal() * B_op).squaredNorm() == 0.0)
    throw CalibrationError("lcqm: operator B is numerically zero; regenerate with a new seed");

  auto hessian_t = [&](double t) {
    return [&B_op, &C_op, &D2, t](const Vector& x) {
      return Vector(t * (C_op.transpose() * (C_op * x)) -
                    B_op.transpose() * (D2.asDiagonal() * (B_op * x)));
    };
  };
  const double target = L_target / m_target;
  auto eval = [&](double t) { return extreme_eigenvalues(hessian_t(t), N); };
  // signed comparison against the target ratio; lam_max <= 0 counts as below,
  // lam_min >= 0 as above
  auto ratio_of = [](const EigPair& e) {
    if (e.max <= 0.0) return 0.0;
    if (e.min >= 0.0) return kInf;
    return e.max / (-e.min);
  };

  double t_lo = 1.0, t_hi = 1.0;
  EigPair e = eval(1.0);
  if (ratio_of(e) < target) {
    for (int i = 0; i < 200 && ratio_of(e) < target; ++i) {
      t_hi *= 4.0;
      e = eval(t_hi);
    }
    t_lo = t_hi / 4.0;
  } else {
    for (int i = 0; i < 200 && ratio_of(eval(t_lo)) > target; ++i) t_lo /= 4.0;
    t_hi = t_lo * 4.0;
  }
  if (!(ratio_of(eval(t_hi)) >= target) || !(ratio_of(eval(t_lo)) <= target))
    throw CalibrationError("lcqm: failed to bracket the curvature ratio");

  double t_star = t_hi;
  EigPair e_star = eval(t_star);
  for (int it = 0; it < 200; ++it) {
    const double t_mid = 0.5 * (t_lo + t_hi);
    const EigPair em = eval(t_mid);
    const double r = ratio_of(em);
    if (std::isfinite(r) && std::abs(r - target) <= 1e-8 * target) {
      t_star = t_mid;
      e_star = em;
      break;
    }
    if (r < target) t_lo = t_mid;
    else t_hi = t_mid;
    t_star = t_mid;
    e_star = em;
  }
  const double s = L_target / e_star.max;
  inst.alpha1 = s * t_star;
  inst.alpha2 = s;

  const EigPair realized = extreme_eigenvalues(
      [&](const Vector& x) {
        return Vector(inst.alpha1 * (C_op.transpose() * (C_op * x)) -
                      inst.alpha2 * (B_op.transpose() * (D2.asDiagonal() * (B_op * x))));
      },
      N);
  if (std::abs(realized.max - L_target) > 1e-6 * L_target ||
      std::abs(realized.min + m_target) > 1e-6 * m_target)
    throw CalibrationError("lcqm: curvature calibration did not converge");
  return inst;
}

// ---- assembled oracles ---------------------------------------------------------

double AssembledLcqm::f_value(const Vector& x) const {
  const Vector r = C_op * x - d;
  const Vector s = B_op * x;
  return 0.5 * alpha1 * r.squaredNorm() - 0.5 * alpha2 * s.dot(D2.asDiagonal() * s);
}

Vector AssembledLcqm::f_gradient(const Vector& x) const {
  return alpha1 * (C_op.transpose() * (C_op * x - d)) -
         alpha2 * (B_op.transpose() * (D2.asDiagonal() * (B_op * x)));
}

Vector AssembledLcqm::hessian_apply(const Vector& x) const {
  return alpha1 * (C_op.transpose() * (C_op * x)) -
         alpha2 * (B_op.transpose() * (D2.asDiagonal() * (B_op * x)));
}

AssembledLcqm assemble(const LcqmInstance& inst) {
  AssembledLcqm a;
  a.l = inst.l;
  a.n = inst.n;
  a.N = svec_dim(inst.n);
  a.A_op = operator_rows(inst.A_mats, a.N);
  a.B_op = operator_rows(inst.B_mats, a.N);
  a.C_op = operator_rows(inst.C_mats, a.N);
  a.D2 = inst.D.array().square();
  a.b = inst.b;
  a.d = inst.d;
  a.alpha1 = inst.alpha1;
  a.alpha2 = inst.alpha2;
  a.curvature = {inst.m_target, inst.L_target};

  LinearMap probe;
  const Matrix& A_op = a.A_op;
  probe.apply = [&A_op](const Vector& x) { return Vector(A_op * x); };
  probe.adjoint = [&A_op](const Vector& p) { return Vector(A_op.transpose() * p); };
  probe.rhs = a.b;
  const NormEstimate est = operator_norm(probe, a.N, 1e-8);
  if (est.converged) {
    a.op_norm_bound = est.value;
    a.op_norm_converged = true;
  } else {
    a.op_norm_bound = a.A_op.norm();  // Frobenius upper bound
    a.op_norm_converged = false;
    log::warn("lcqm: operator norm power iteration did not converge; "
              "using Frobenius bound %.6g", a.op_norm_bound);
  }
  return a;
}

ProblemSpec lcqm_problem(const LcqmInstance& inst) {
  auto shared = std::make_shared<const AssembledLcqm>(assemble(inst));
  ProblemSpec p;
  p.f.value = [shared](const Vector& x) { return shared->f_value(x); };
  p.f.gradient = [shared](const Vector& x) { return shared->f_gradient(x); };
  p.f.curvature = shared->curvature;
  p.h = spectraplex_prox_oracle(inst.n);
  p.constraint.apply = [shared](const Vector& x) { return Vector(shared->A_op * x); };
  p.constraint.adjoint = [shared](const Vector& q) {
    return Vector(shared->A_op.transpose() * q);
  };
  p.constraint.rhs = shared->b;
  p.constraint.norm_bound = shared->op_norm_bound;
  p.cbar = 0.0;  // spectraplex is bounded, so the objective is bounded below
  return p;
}

Vector random_start(std::uint64_t seed, int n) {
  Rng rng(seed);
  Vector nu(n);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (int i = 0; i < n; ++i) {
      const double mask = rng.u01();
      nu[i] = (mask < 0.1) ? rng.u01() : 0.0;
    }
    const double norm = nu.norm();
    if (norm > 0.0) {
      nu /= norm;
      return svec(Matrix(nu * nu.transpose()));
    }
  }
  throw std::runtime_error("random_start: could not draw a nonzero vector");
}

}  // namespace ipaal::lcqm
