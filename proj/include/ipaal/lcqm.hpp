#pragma once

#include "ipaal/oracles.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipaal::lcqm {

using Matrix = Eigen::MatrixXd;

/// Deterministic, portable uniform generator (mt19937_64 with a fixed
/// bits-to-double mapping; no implementation-defined distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double u01() { return static_cast<double>(gen_() >> 11) * (1.0 / 9007199254740992.0); }
  double uniform(double a, double b) { return a + (b - a) * u01(); }

 private:
  std::mt19937_64 gen_;
};

// ---- scaled symmetric vectorization ----------------------------------------
// Lower triangle, column-major, off-diagonal entries scaled by sqrt(2), so the
// Euclidean inner product of two packed vectors equals the Frobenius inner
// product of the matrices.

inline int svec_dim(int n) { return n * (n + 1) / 2; }

Vector svec(const Matrix& X);
Matrix smat(const Vector& v, int n);

// ---- projections ------------------------------------------------------------

/// Euclidean projection onto the unit simplex {x >= 0, sum x = 1}
/// (sort-and-threshold).
Vector simplex_project(const Vector& y);

/// Euclidean projection of a symmetric matrix onto the spectraplex
/// {Z psd, tr Z = 1}: eigendecompose, project the spectrum onto the simplex,
/// reconstruct.  stepsize is ignored (indicator function).
Matrix spectraplex_prox(const Matrix& W, double stepsize = 1.0);

/// ProxOracle over svec coordinates for the spectraplex indicator; value() is
/// a tolerant membership test (finite only within tol of the set).
ProxOracle spectraplex_prox_oracle(int n, double membership_tol = 1e-8);

// ---- operator norm ----------------------------------------------------------

struct NormEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Power iteration on A*A until the Rayleigh quotient stabilizes to rel. tol;
/// the returned value is inflated by (1 + 10 tol) to make it a valid upper
/// bound with high confidence.  Deterministic for a fixed seed.
NormEstimate operator_norm(const LinearMap& map, int point_dim, double tol,
                           int max_iters = 20000, std::uint64_t seed = 0x9E3779B97F4A7C15ULL);

// ---- extreme eigenvalues ----------------------------------------------------

struct EigPair {
  double min = 0.0;
  double max = 0.0;
};

/// Extreme eigenvalues of a symmetric operator given through its matvec.
/// Dense solve for small dimensions, Lanczos with full reorthogonalization
/// otherwise.
EigPair extreme_eigenvalues(const std::function<Vector(const Vector&)>& op, int dim,
                            std::uint64_t seed = 0xA5A5A5A5DEADBEEFULL);

// ---- instance family --------------------------------------------------------

struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A quadratic matrix instance
///   min (alpha1/2)|C(z) - d|^2 - (alpha2/2)|D B(z)|^2
///   s.t. A(z) = b,  z in the n-spectraplex,
/// with A, B, C acting on symmetric matrices by Frobenius inner products
/// against the stored coefficient matrices.
struct LcqmInstance {
  int l = 0;
  int n = 0;
  std::uint64_t seed = 0;
  double density = 1.0;
  double L_target = 0.0;
  double m_target = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::vector<Matrix> A_mats;  // l of them, n x n
  std::vector<Matrix> B_mats;  // n of them
  std::vector<Matrix> C_mats;  // l of them
  Vector D;                    // positive diagonal, entries in [1, 1000]
  Vector b;                    // R^l
  Vector d;                    // R^l
};

/// Samples coefficient data (entries U[0,1] at the given density for the
/// matrix families, dense for b and d, U[1,1000] for D) and calibrates
/// (alpha1, alpha2) so the objective Hessian has extreme eigenvalues
/// (L_target, -m_target) to 1e-6 relative.  Fully determined by the seed.
LcqmInstance generate_instance(std::uint64_t seed, int l, int n, double density, double L_target,
                               double m_target);

/// Precomputed svec-space operators of an instance.
struct AssembledLcqm {
  int l = 0;
  int n = 0;
  int N = 0;  // svec dimension
  Matrix A_op, B_op, C_op;  // rows are svec(sym(.)) of the coefficient matrices
  Vector D2;
  Vector b, d;
  double alpha1 = 0.0, alpha2 = 0.0;
  Curvature curvature;
  double op_norm_bound = 0.0;
  bool op_norm_converged = true;

  double f_value(const Vector& x) const;
  Vector f_gradient(const Vector& x) const;
  Vector hessian_apply(const Vector& x) const;
};

AssembledLcqm assemble(const LcqmInstance& inst);

/// Oracles over svec coordinates for the assembled instance.
ProblemSpec lcqm_problem(const LcqmInstance& inst);

/// Random rank-one starting point nu nu^T with nu a normalized sparse
/// (10% fill) U[0,1] draw; returned in svec coordinates.
Vector random_start(std::uint64_t seed, int n);

// ---- serialization ----------------------------------------------------------
// JSON container with exact (round-trip lossless) floating point values;
// matrices stored as row-major nonzero triplets.

std::string instance_to_json(const LcqmInstance& inst);
LcqmInstance instance_from_json(const std::string& text);
void save_instance(const LcqmInstance& inst, const std::string& path);
LcqmInstance load_instance(const std::string& path);

}  // namespace ipaal::lcqm
