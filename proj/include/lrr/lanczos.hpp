#pragma once

#include <cstdint>

#include "lrr/estimator.hpp"
#include "lrr/kernels.hpp"
#include "lrr/spectrum.hpp"

namespace lrr {

/// A Q_s = Q_s T_s + residual e_s^T, T_s tridiagonal with diagonal `alphas`
/// and off-diagonal `betas`.
struct LanczosFactorization {
  Vector alphas;  // length steps_taken
  Vector betas;   // length steps_taken - 1
  Matrix basis;   // n x steps_taken, orthonormal columns
  Index steps_taken = 0;
  /// Norm of the residual after the last step.
  double residual_norm = 0.0;
  /// The recurrence hit beta < 1e-12 before s steps.
  bool breakdown = false;
};

/// What lanczos_factor does when the Krylov space becomes invariant.
enum class BreakdownPolicy {
  /// Stop and report the steps taken.
  stop,
  /// Continue from a fresh seeded random vector orthogonal to the basis,
  /// recording a zero off-diagonal (T becomes block diagonal).
  restart,
};

inline constexpr double kLanczosBreakdown = 1e-12;

/// s steps of Lanczos tridiagonalization with two-pass modified Gram-Schmidt
/// reorthogonalization against every earlier basis vector.
LanczosFactorization lanczos_factor(const KernelMatrix& a, Index s, const Vector& q0,
                                    BreakdownPolicy policy = BreakdownPolicy::stop,
                                    std::uint64_t restart_seed = 0);

struct TridiagonalEigen {
  Vector values;   // top-k, descending
  Matrix vectors;  // s x k, column i pairs with values(i)
};

/// Leading k eigenpairs of the symmetric tridiagonal matrix (alphas, betas).
TridiagonalEigen tridiag_eigs(const Vector& alphas, const Vector& betas, Index k);

/// Ritz estimates of the top-k eigenvalues: Gaussian start vector from
/// `seed`, s Lanczos steps (restarting on breakdown), tail completion.
LowRankSpectrum lanczos_topk(const KernelMatrix& a, Index k, Index s, std::uint64_t seed);

EntropyEstimate lanczos_entropy(const KernelMatrix& a, double alpha, Index k, Index s, std::uint64_t seed);

/// Approximate gradient of the low-rank entropy with respect to the entries
/// of A: sum_i dS/dlambda_i (Q u_i)(Q u_i)^T over the top-k Ritz pairs, where
///   dS/dlambda_i = alpha / ((1 - alpha) ln 2)
///                  * (lambda_i^(alpha-1) - lambda_r^(alpha-1))
///                  / (sum_j lambda_j^alpha + (n-k) lambda_r^alpha).
/// The tail term comes from dlambda_r/dlambda_i = -1/(n-k). Throws
/// InvalidArgument at alpha = 1 and NumericalError when lambda_r = 0 with
/// alpha < 2 (or a zero Ritz value with alpha < 1).
Matrix entropy_gradient(const KernelMatrix& a, double alpha, Index k, Index s, std::uint64_t seed);

/// Partial derivatives of the low-rank entropy with respect to each top
/// eigenvalue, for a given spectrum (same formula and errors as above).
Vector entropy_eigen_derivatives(const LowRankSpectrum& spectrum, double alpha);

}  // namespace lrr
