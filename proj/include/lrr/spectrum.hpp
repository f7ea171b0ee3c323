#pragma once

#include "lrr/kernels.hpp"
#include "lrr/types.hpp"

namespace lrr {

/// Top-k eigenvalue estimates completed by a uniform tail.
///
/// Invariants: 1 <= k <= n-1, `top` sorted descending with entries in [0, 1],
/// tail >= 0 and sum(top) + (n-k) tail = 1 (exactly up to rounding, except
/// when the estimates oversum 1 by at most 1e-6, where tail is clamped to 0).
struct LowRankSpectrum {
  Vector top;
  double tail = 0.0;
  Index n = 0;

  Index k() const { return top.size(); }
};

/// Eigenvalue magnitudes below this are treated as exactly zero before powering.
inline constexpr double kZeroEigenvalue = 1e-14;
/// |alpha - 1| below this selects the Shannon limit.
inline constexpr double kShannonWindow = 1e-8;

/// Completes k estimates of the leading eigenvalues of a trace-one n x n
/// matrix with the uniform tail (1 - sum(top)) / (n - k).
///
/// Entries in [-1e-8, 0) are clamped to 0; smaller entries raise NumericalError,
/// as does a sum exceeding 1 + 1e-6.
LowRankSpectrum tail_complete(const Vector& top_eigs, Index n);

/// Low-rank Renyi entropy in bits. alpha near 1 uses the Shannon limit.
double lowrank_entropy(const LowRankSpectrum& spectrum, double alpha);

/// Renyi entropy in bits of a full eigenvalue vector (any order).
double spectrum_entropy(const Vector& eigenvalues, double alpha);

/// Raw power sums: sum(top^alpha) + (n-k) tail^alpha, or sum(lambda^alpha).
/// alpha == 1 is rejected.
double information_potential(const LowRankSpectrum& spectrum, double alpha);
double information_potential(const Vector& eigenvalues, double alpha);

/// All eigenvalues of a kernel matrix in descending order (dense symmetric solver).
Vector eigenvalues_descending(const KernelMatrix& a);

/// Low-rank spectrum from a full descending spectrum: the top k entries plus
/// the mean of the remaining n - k as the tail.
LowRankSpectrum lowrank_from_eigenvalues(const Vector& eigenvalues, Index k);

/// Dense eigenvalues passed through lowrank_from_eigenvalues. The reference
/// for every approximate backend.
LowRankSpectrum exact_spectrum(const KernelMatrix& a, Index k);

/// Full matrix-based Renyi entropy of `a`.
double full_entropy(const KernelMatrix& a, double alpha);

}  // namespace lrr
