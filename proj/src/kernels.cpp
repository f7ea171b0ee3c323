#include "lrr/kernels.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "lrr/error.hpp"
#include "lrr/parallel.hpp"

namespace lrr {
namespace {

constexpr double kDegenerateDiagonal = 1e-300;

std::vector<Index> resolve_columns(const DataMatrix& x, std::span<const Index> columns) {
  std::vector<Index> cols;
  if (columns.empty()) {
    cols.resize(static_cast<std::size_t>(x.features()));
    std::iota(cols.begin(), cols.end(), Index{0});
    return cols;
  }
  for (Index c : columns) {
    if (c < 0 || c >= x.features())
      throw InvalidArgument("column index " + std::to_string(c) + " out of range");
    cols.push_back(c);
  }
  return cols;
}

// Selected columns, transposed so each sample is a contiguous column.
Matrix gather_samples(const DataMatrix& x, const std::vector<Index>& cols) {
  Matrix t(static_cast<Index>(cols.size()), x.samples());
  for (std::size_t c = 0; c < cols.size(); ++c) t.row(static_cast<Index>(c)) = x.values().col(cols[c]).transpose();
  return t;
}

// Fills the upper triangle row by row (each entry owned by one worker) and
// mirrors it.
template <class Entry>
Matrix symmetric_fill(Index n, Entry&& entry) {
  Matrix k(n, n);
  parallel_for(n, [&](std::ptrdiff_t i) {
    for (Index j = i; j < n; ++j) k(i, j) = entry(i, j);
  });
  for (Index j = 0; j < n; ++j)
    for (Index i = j + 1; i < n; ++i) k(i, j) = k(j, i);
  return k;
}

}  // namespace

DataMatrix::DataMatrix(Matrix values, std::optional<std::vector<int>> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  if (values_.rows() < 2) throw DataError("data matrix needs at least 2 samples");
  if (values_.cols() < 1) throw DataError("data matrix needs at least 1 feature");
  for (Index i = 0; i < values_.rows(); ++i)
    for (Index j = 0; j < values_.cols(); ++j)
      if (!std::isfinite(values_(i, j)))
        throw DataError("non-finite value in row " + std::to_string(i) + ", column " + std::to_string(j));
  if (labels_) {
    if (static_cast<Index>(labels_->size()) != values_.rows())
      throw DataError("label vector has " + std::to_string(labels_->size()) + " entries, expected " +
                      std::to_string(values_.rows()));
    for (std::size_t i = 0; i < labels_->size(); ++i)
      if ((*labels_)[i] < 0) throw DataError("negative class id in row " + std::to_string(i));
  }
}

KernelMatrix KernelMatrix::from_trace_one(Matrix m) {
  if (m.rows() != m.cols()) throw InvalidArgument("kernel matrix must be square");
  if (m.rows() < 2) throw InvalidArgument("kernel matrix must be at least 2x2");
  if (!m.allFinite()) throw InvalidArgument("kernel matrix has non-finite entries");
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidArgument("kernel matrix is not symmetric");
  if (std::abs(m.trace() - 1.0) > 1e-10) throw InvalidArgument("kernel matrix must have unit trace");
  Matrix sym = 0.5 * (m + m.transpose());
  return KernelMatrix(std::move(sym), false);
}

Matrix gaussian_gram(const DataMatrix& x, double sigma, std::span<const Index> columns) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("gaussian kernel width must be positive");
  const auto cols = resolve_columns(x, columns);
  const Matrix t = gather_samples(x, cols);
  const Index n = x.samples();
  const Vector sq = t.colwise().squaredNorm().transpose();
  const double inv = 1.0 / (2.0 * sigma * sigma);
  return symmetric_fill(n, [&](Index i, Index j) {
    if (i == j) return 1.0;
    const double d2 = std::max(0.0, sq(i) + sq(j) - 2.0 * t.col(i).dot(t.col(j)));
    return std::exp(-d2 * inv);
  });
}

Matrix linear_gram(const DataMatrix& x) {
  const Matrix t = x.values().transpose();
  return symmetric_fill(x.samples(), [&](Index i, Index j) { return t.col(i).dot(t.col(j)); });
}

Matrix delta_gram(const DataMatrix& x, std::span<const Index> columns) {
  const auto cols = resolve_columns(x, columns);
  const Matrix t = gather_samples(x, cols);
  return symmetric_fill(x.samples(), [&](Index i, Index j) { return t.col(i) == t.col(j) ? 1.0 : 0.0; });
}

Matrix label_gram(std::span<const int> labels, double sigma, bool delta) {
  Matrix values(static_cast<Index>(labels.size()), 1);
  for (std::size_t i = 0; i < labels.size(); ++i) values(static_cast<Index>(i), 0) = labels[i];
  const DataMatrix x(std::move(values));
  return delta ? delta_gram(x) : gaussian_gram(x, sigma);
}

KernelMatrix normalize(const Matrix& gram) {
  if (gram.rows() != gram.cols()) throw InvalidArgument("gram matrix must be square");
  const Index n = gram.rows();
  if (n < 2) throw InvalidArgument("gram matrix must be at least 2x2");
  Matrix k = 0.5 * (gram + gram.transpose());
  Vector inv_sqrt(n);
  for (Index i = 0; i < n; ++i) {
    if (!(k(i, i) > kDegenerateDiagonal))
      throw DataError("degenerate kernel diagonal at index " + std::to_string(i) + " (K_ii = " +
                      std::to_string(k(i, i)) + ")");
    inv_sqrt(i) = 1.0 / std::sqrt(k(i, i));
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) k(i, j) = i == j ? inv_n : k(i, j) * inv_sqrt(i) * inv_sqrt(j) * inv_n;
  if (!k.allFinite()) throw DataError("normalized kernel has non-finite entries");
  return KernelMatrix(std::move(k), true);
}

KernelMatrix hadamard_joint(std::span<const KernelMatrix> kernels) {
  if (kernels.size() < 2) throw InvalidArgument("hadamard_joint needs at least two kernels");
  const Index n = kernels.front().size();
  bool unit = true;
  Matrix prod = kernels.front().matrix();
  for (const auto& k : kernels) {
    if (k.size() != n) throw InvalidArgument("hadamard_joint: kernel dimensions differ");
    unit = unit && k.unit_diagonal();
  }
  for (std::size_t l = 1; l < kernels.size(); ++l) prod = prod.cwiseProduct(kernels[l].matrix());
  const double tr = prod.trace();
  if (!(tr > kDegenerateDiagonal)) throw NumericalError("hadamard_joint: product has zero trace");
  prod /= tr;
  if (unit) {
    const double inv_n = 1.0 / static_cast<double>(n);
    if ((prod.diagonal().array() - inv_n).abs().maxCoeff() > 1e-12)
      throw NumericalError("hadamard_joint: renormalized diagonal deviates from 1/n");
    prod.diagonal().setConstant(inv_n);
  }
  return KernelMatrix(std::move(prod), unit);
}

KernelMatrix uninformative_kernel(Index n) { return normalize(Matrix::Ones(n, n)); }

}  // namespace lrr
