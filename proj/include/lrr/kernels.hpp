#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lrr/types.hpp"

namespace lrr {

/// n samples by d real features, with optional integer class labels.
class DataMatrix {
 public:
  /// Throws DataError if n < 2, d < 1, any value is non-finite (the message
  /// names the row), or the label vector has the wrong length or a negative id.
  explicit DataMatrix(Matrix values, std::optional<std::vector<int>> labels = std::nullopt);

  const Matrix& values() const { return values_; }
  const std::optional<std::vector<int>>& labels() const { return labels_; }
  Index samples() const { return values_.rows(); }
  Index features() const { return values_.cols(); }

 private:
  Matrix values_;
  std::optional<std::vector<int>> labels_;
};

/// Symmetric, trace-one, positive semi-definite n x n matrix.
///
/// Instances produced by normalize() or hadamard_joint() of normalized inputs
/// additionally have every diagonal entry equal to 1/n. from_trace_one()
/// builds the relaxed form (any trace-one PSD matrix), used for synthetic
/// spectra and axiom checks; PSD-ness is the caller's responsibility there.
class KernelMatrix {
 public:
  /// Throws InvalidArgument unless m is square, n >= 2, symmetric to 1e-12
  /// relative and of trace 1 to 1e-10.
  static KernelMatrix from_trace_one(Matrix m);

  const Matrix& matrix() const { return entries_; }
  Index size() const { return entries_.rows(); }
  double operator()(Index i, Index j) const { return entries_(i, j); }
  bool unit_diagonal() const { return unit_diagonal_; }

 private:
  KernelMatrix(Matrix entries, bool unit_diagonal)
      : entries_(std::move(entries)), unit_diagonal_(unit_diagonal) {}

  friend KernelMatrix normalize(const Matrix& gram);
  friend KernelMatrix hadamard_joint(std::span<const KernelMatrix> kernels);

  Matrix entries_;
  bool unit_diagonal_ = false;
};

/// K_ij = exp(-|x_i - x_j|^2 / (2 sigma^2)) over the selected columns (all
/// columns when `columns` is empty).
Matrix gaussian_gram(const DataMatrix& x, double sigma, std::span<const Index> columns = {});

/// K_ij = <x_i, x_j>.
Matrix linear_gram(const DataMatrix& x);

/// K_ij = 1 if rows i and j are equal on the selected columns, else 0.
Matrix delta_gram(const DataMatrix& x, std::span<const Index> columns = {});

/// Gram matrix of a scalar label vector: Gaussian of width sigma, or the
/// Kronecker delta when `delta` is set.
Matrix label_gram(std::span<const int> labels, double sigma, bool delta = false);

/// A_ij = K_ij / (n sqrt(K_ii K_jj)) after symmetrizing K. Throws DataError
/// naming the first index with K_ii <= 1e-300.
KernelMatrix normalize(const Matrix& gram);

/// Entrywise product of L >= 2 kernels, renormalized to trace one.
KernelMatrix hadamard_joint(std::span<const KernelMatrix> kernels);

/// (1/n) 1 1^T: the kernel of a constant variable and the identity of
/// hadamard_joint.
KernelMatrix uninformative_kernel(Index n);

}  // namespace lrr
