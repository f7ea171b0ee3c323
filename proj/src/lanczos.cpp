#include "lrr/lanczos.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lrr/error.hpp"
#include "lrr/parallel.hpp"
#include "lrr/rng.hpp"

namespace lrr {
namespace {

// y = A q. A is symmetric, so row i of A is column i and each output entry is
// one contiguous dot product.
void symmetric_matvec(const Matrix& a, const Vector& q, Vector& y) {
  parallel_for(a.cols(), [&](std::ptrdiff_t i) { y(i) = a.col(i).dot(q); });
}

void orthogonalize(Vector& w, const Matrix& basis, Index count) {
  for (int pass = 0; pass < 2; ++pass)
    for (Index j = 0; j < count; ++j) w -= basis.col(j).dot(w) * basis.col(j);
}

Vector gaussian_vector(Index n, std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

struct RitzPairs {
  TridiagonalEigen eig;
  Matrix basis;
  Index n;
};

RitzPairs ritz_pairs(const KernelMatrix& a, Index k, Index s, std::uint64_t seed) {
  const Index n = a.size();
  if (k < 1 || k > n - 1) throw InvalidArgument("rank k must lie in [1, n-1]");
  if (s < k || s > n)
    throw InvalidArgument("Lanczos steps s = " + std::to_string(s) + " must satisfy k <= s <= n");
  const Vector q0 = gaussian_vector(n, seed, stream_id("lanczos-start"));
  LanczosFactorization f = lanczos_factor(a, s, q0, BreakdownPolicy::restart, seed);
  if (f.steps_taken < k)
    throw NumericalError("Lanczos produced only " + std::to_string(f.steps_taken) + " Ritz values for k = " +
                         std::to_string(k) + "; increase s or use the exact backend");
  TridiagonalEigen eig = tridiag_eigs(f.alphas, f.betas, k);
  return RitzPairs{std::move(eig), std::move(f.basis), n};
}

}  // namespace

LanczosFactorization lanczos_factor(const KernelMatrix& a, Index s, const Vector& q0, BreakdownPolicy policy,
                                    std::uint64_t restart_seed) {
  const Index n = a.size();
  if (s < 1 || s > n) throw InvalidArgument("Lanczos steps s = " + std::to_string(s) + " outside [1, n]");
  if (q0.size() != n) throw InvalidArgument("start vector has the wrong length");
  const double q0_norm = q0.norm();
  if (!(q0_norm > 0.0) || !std::isfinite(q0_norm)) throw InvalidArgument("Lanczos start vector must be nonzero");

  const Matrix& m = a.matrix();
  Matrix q(n, s);
  std::vector<double> alphas;
  std::vector<double> betas;
  q.col(0) = q0 / q0_norm;
  Vector w(n);
  double beta_prev = 0.0;
  LanczosFactorization f;
  Index steps = 0;
  std::uint64_t restarts = 0;
  for (Index j = 0; j < s; ++j) {
    symmetric_matvec(m, q.col(j), w);
    if (j > 0) w -= beta_prev * q.col(j - 1);
    const double gamma = w.dot(q.col(j));
    w -= gamma * q.col(j);
    orthogonalize(w, q, j + 1);
    alphas.push_back(gamma);
    steps = j + 1;
    double beta = w.norm();
    f.residual_norm = beta;
    if (j + 1 == s) break;
    if (beta < kLanczosBreakdown) {
      f.breakdown = true;
      if (policy == BreakdownPolicy::stop) break;
      Vector fresh = gaussian_vector(n, restart_seed, stream_id("lanczos-restart", restarts++));
      orthogonalize(fresh, q, j + 1);
      const double norm = fresh.norm();
      if (!(norm > kLanczosBreakdown)) break;
      q.col(j + 1) = fresh / norm;
      beta = 0.0;
    } else {
      q.col(j + 1) = w / beta;
    }
    betas.push_back(beta);
    beta_prev = beta;
  }
  f.steps_taken = steps;
  f.alphas = Eigen::Map<const Vector>(alphas.data(), static_cast<Index>(alphas.size()));
  f.betas = Eigen::Map<const Vector>(betas.data(), static_cast<Index>(betas.size()));
  f.basis = q.leftCols(steps);
  return f;
}

TridiagonalEigen tridiag_eigs(const Vector& alphas, const Vector& betas, Index k) {
  const Index s = alphas.size();
  if (betas.size() != std::max<Index>(s - 1, 0)) throw InvalidArgument("tridiagonal: need s-1 off-diagonal entries");
  if (k < 1 || k > s)
    throw InvalidArgument("k = " + std::to_string(k) + " exceeds the " + std::to_string(s) + " Lanczos steps taken");
  TridiagonalEigen out;
  if (s == 1) {
    out.values = alphas;
    out.vectors = Matrix::Ones(1, 1);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver;
  Vector diag = alphas;
  Vector sub = betas;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver did not converge");
  out.values = solver.eigenvalues().reverse().head(k);
  out.vectors = solver.eigenvectors().rowwise().reverse().leftCols(k);
  return out;
}

LowRankSpectrum lanczos_topk(const KernelMatrix& a, Index k, Index s, std::uint64_t seed) {
  const RitzPairs ritz = ritz_pairs(a, k, s, seed);
  return tail_complete(ritz.eig.values, ritz.n);
}

EntropyEstimate lanczos_entropy(const KernelMatrix& a, double alpha, Index k, Index s, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const LowRankSpectrum spectrum = lanczos_topk(a, k, s, seed);
  EntropyEstimate e;
  e.value = lowrank_entropy(spectrum, alpha);
  e.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  e.alpha = alpha;
  e.k = k;
  e.backend = Backend::lanczos;
  e.s = s;
  e.seed = seed;
  return e;
}

Vector entropy_eigen_derivatives(const LowRankSpectrum& spectrum, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("entropy order alpha must be positive");
  if (std::abs(alpha - 1.0) < kShannonWindow) throw InvalidArgument("gradient is implemented for alpha != 1");
  const double tail =
      static_cast<double>(spectrum.n - spectrum.k()) * spectrum.tail < kZeroEigenvalue ? 0.0 : spectrum.tail;
  if (tail == 0.0 && alpha < 2.0)
    throw NumericalError("gradient undefined: tail eigenvalue is zero and alpha < 2");
  const double ip = information_potential(spectrum, alpha);
  const double tail_term = tail == 0.0 ? 0.0 : std::pow(tail, alpha - 1.0);
  const double factor = alpha / ((1.0 - alpha) * std::numbers::ln2 * ip);
  Vector d(spectrum.k());
  for (Index i = 0; i < spectrum.k(); ++i) {
    const double lambda = spectrum.top(i) < kZeroEigenvalue ? 0.0 : spectrum.top(i);
    if (lambda == 0.0 && alpha < 1.0)
      throw NumericalError("gradient undefined: zero eigenvalue estimate with alpha < 1");
    const double head_term = lambda == 0.0 ? 0.0 : std::pow(lambda, alpha - 1.0);
    d(i) = factor * (head_term - tail_term);
  }
  return d;
}

Matrix entropy_gradient(const KernelMatrix& a, double alpha, Index k, Index s, std::uint64_t seed) {
  if (std::abs(alpha - 1.0) < kShannonWindow) throw InvalidArgument("gradient is implemented for alpha != 1");
  const RitzPairs ritz = ritz_pairs(a, k, s, seed);
  const LowRankSpectrum spectrum = tail_complete(ritz.eig.values, ritz.n);
  // tail_complete sorts; Ritz values already come out descending, so indices agree.
  const Vector d = entropy_eigen_derivatives(spectrum, alpha);
  const Matrix vectors = ritz.basis * ritz.eig.vectors;  // n x k Ritz vectors
  Matrix g = vectors * d.asDiagonal() * vectors.transpose();
  return 0.5 * (g + g.transpose());
}

}  // namespace lrr
