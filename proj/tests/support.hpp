#pragma once

// Independent oracles and random instance generators shared by the tests.
// Nothing here calls the library's entropy code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lrr/kernels.hpp"
#include "lrr/rng.hpp"

namespace lrr::test {

inline Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.normal();
  return g;
}

inline Matrix random_orthogonal(Index n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(n, n, rng));
  Matrix q = qr.householderQ();
  // Fix column signs so the draw is Haar distributed.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

/// Phi diag(w) Phi^T / sum(w) with a random orthogonal Phi.
inline KernelMatrix kernel_with_spectrum(const Vector& w, Rng& rng) {
  const Matrix phi = random_orthogonal(w.size(), rng);
  Matrix a = phi * (w / w.sum()).asDiagonal() * phi.transpose();
  a = (0.5 * (a + a.transpose())).eval();
  a /= a.trace();
  return KernelMatrix::from_trace_one(a);
}

/// Trace-one PSD matrix G G^T / tr with G n x rank Gaussian.
inline KernelMatrix random_psd(Index n, Rng& rng, Index rank = 0) {
  const Matrix g = gaussian_matrix(n, rank > 0 ? rank : n, rng);
  Matrix a = g * g.transpose();
  a = (0.5 * (a + a.transpose())).eval();
  a /= a.trace();
  return KernelMatrix::from_trace_one(a);
}

/// Normalized Gaussian kernel of n random points in d dimensions; the scale
/// spreads the spectrum between near-uniform and near-rank-one.
inline Matrix random_gaussian_gram(Index n, Index d, double scale, Rng& rng) {
  const Matrix x = scale * gaussian_matrix(n, d, rng);
  Matrix k(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) k(i, j) = std::exp(-0.5 * (x.row(i) - x.row(j)).squaredNorm());
  return k;
}

/// A_ij = K_ij / (n sqrt(K_ii K_jj)), written out independently of normalize().
inline Matrix oracle_normalize(const Matrix& k) {
  const Index n = k.rows();
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = k(i, j) / (static_cast<double>(n) * std::sqrt(k(i, i) * k(j, j)));
  return a;
}

/// Eigenvalues of a symmetric matrix, descending.
inline std::vector<double> oracle_eigs(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());
  std::sort(v.begin(), v.end(), [](double x, double y) { return x > y; });
  return v;
}

/// Renyi entropy (bits) of a probability vector, with Shannon at alpha == 1.
inline double oracle_renyi(const std::vector<double>& p, double alpha) {
  if (alpha == 1.0) {
    double h = 0.0;
    for (double x : p)
      if (x > 0) h -= x * std::log2(x);
    return h;
  }
  double s = 0.0;
  for (double x : p)
    if (x > 1e-14) s += std::pow(x, alpha);
  return std::log2(s) / (1.0 - alpha);
}

/// Low-rank entropy from the first k of the descending eigenvalues `eig`.
inline double oracle_lowrank(const std::vector<double>& eig, Index k, double alpha) {
  const Index n = static_cast<Index>(eig.size());
  std::vector<double> p(eig.begin(), eig.begin() + k);
  double top = 0.0;
  for (double& x : p) {
    x = std::max(x, 0.0);
    top += x;
  }
  const double tail = std::max(0.0, (1.0 - top) / static_cast<double>(n - k));
  for (Index i = k; i < n; ++i) p.push_back(tail);
  return oracle_renyi(p, alpha);
}

inline double oracle_lowrank(const Matrix& a, Index k, double alpha) {
  return oracle_lowrank(oracle_eigs(a), k, alpha);
}

/// Random symmetric direction with unit Frobenius norm.
inline Matrix random_symmetric(Index n, Rng& rng) {
  Matrix e = gaussian_matrix(n, n, rng);
  e = (0.5 * (e + e.transpose())).eval();
  return e / e.norm();
}

}  // namespace lrr::test
