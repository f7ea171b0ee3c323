#include "lrr/sketch.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "lrr/error.hpp"
#include "lrr/fwht.hpp"
#include "lrr/parallel.hpp"
#include "lrr/rng.hpp"

namespace lrr {
namespace {

void check_dims(Index n, Index s) {
  if (n < 1) throw InvalidArgument("projection needs n >= 1");
  if (s < 1 || s > n)
    throw InvalidArgument("sketch width s = " + std::to_string(s) + " outside [1, n = " + std::to_string(n) + "]");
}

// First s entries of a seeded partial Fisher-Yates shuffle of [0, population).
std::vector<Index> sample_without_replacement(Index population, Index s, Rng& rng) {
  std::vector<Index> perm(static_cast<std::size_t>(population));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = 0; i < s; ++i) {
    const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(population - i)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  perm.resize(static_cast<std::size_t>(s));
  return perm;
}

// Robert Floyd's algorithm: p distinct rows out of n, returned sorted.
std::vector<Index> sample_support(Index n, Index p, Rng& rng) {
  std::vector<Index> chosen;
  chosen.reserve(static_cast<std::size_t>(p));
  for (Index j = n - p; j < n; ++j) {
    const auto t = static_cast<Index>(rng.below(static_cast<std::uint64_t>(j + 1)));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(j);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

double hadamard_entry(Index i, Index j) {
  return (std::popcount(static_cast<std::uint64_t>(i & j)) & 1) ? -1.0 : 1.0;
}

}  // namespace

std::string_view to_string(ProjectionMethod method) {
  switch (method) {
    case ProjectionMethod::grp: return "grp";
    case ProjectionMethod::srht: return "srht";
    case ProjectionMethod::ist: return "ist";
    case ProjectionMethod::sgs: return "sgs";
  }
  return "?";
}

ProjectionMethod projection_method(Backend backend) {
  switch (backend) {
    case Backend::grp: return ProjectionMethod::grp;
    case Backend::srht: return ProjectionMethod::srht;
    case Backend::ist: return ProjectionMethod::ist;
    case Backend::sgs: return ProjectionMethod::sgs;
    default: throw InvalidArgument("backend '" + std::string(to_string(backend)) + "' is not a random projection");
  }
}

Backend backend_of(ProjectionMethod method) {
  switch (method) {
    case ProjectionMethod::grp: return Backend::grp;
    case ProjectionMethod::srht: return Backend::srht;
    case ProjectionMethod::ist: return Backend::ist;
    case ProjectionMethod::sgs: return Backend::sgs;
  }
  return Backend::grp;
}

ProjectionOperator ProjectionOperator::grp(Index n, Index s, std::uint64_t seed) {
  check_dims(n, s);
  for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
    Rng rng(seed, stream_id("grp", attempt));
    Matrix g(n, s);
    for (Index j = 0; j < s; ++j)
      for (Index i = 0; i < n; ++i) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    const Vector r = qr.matrixQR().diagonal().cwiseAbs();
    if (r.minCoeff() <= 1e-10 * r.maxCoeff()) continue;
    ProjectionOperator op(ProjectionMethod::grp, n, s);
    op.scale_ = std::sqrt(static_cast<double>(n) / static_cast<double>(s));
    op.dense_ = op.scale_ * (qr.householderQ() * Matrix::Identity(n, s));
    return op;
  }
  throw NumericalError("grp: Gaussian draw is rank deficient after resampling");
}

ProjectionOperator ProjectionOperator::srht(Index n, std::vector<double> signs, std::vector<Index> columns) {
  check_dims(n, static_cast<Index>(columns.size()));
  if (static_cast<Index>(signs.size()) != n) throw InvalidArgument("srht: need one sign per row");
  const std::size_t padded = next_pow2(static_cast<std::size_t>(n));
  std::vector<bool> seen(padded, false);
  for (Index c : columns) {
    if (c < 0 || static_cast<std::size_t>(c) >= padded) throw InvalidArgument("srht: column index out of range");
    if (seen[static_cast<std::size_t>(c)]) throw InvalidArgument("srht: repeated column index");
    seen[static_cast<std::size_t>(c)] = true;
  }
  for (double d : signs)
    if (d != 1.0 && d != -1.0) throw InvalidArgument("srht: signs must be +1 or -1");
  ProjectionOperator op(ProjectionMethod::srht, n, static_cast<Index>(columns.size()));
  op.scale_ = 1.0 / std::sqrt(static_cast<double>(columns.size()));
  op.signs_ = std::move(signs);
  op.columns_ = std::move(columns);
  op.padded_ = padded;
  return op;
}

ProjectionOperator ProjectionOperator::srht(Index n, Index s, std::uint64_t seed) {
  check_dims(n, s);
  Rng rng(seed, stream_id("srht"));
  std::vector<double> signs(static_cast<std::size_t>(n));
  for (auto& d : signs) d = rng.sign();
  const auto padded = static_cast<Index>(next_pow2(static_cast<std::size_t>(n)));
  return srht(n, std::move(signs), sample_without_replacement(padded, s, rng));
}

ProjectionOperator ProjectionOperator::ist(Index n, Index s, std::uint64_t seed) {
  check_dims(n, s);
  Rng rng(seed, stream_id("ist"));
  ProjectionOperator op(ProjectionMethod::ist, n, s);
  op.scale_ = std::sqrt(static_cast<double>(n) / static_cast<double>(s));
  std::vector<double> row_signs(static_cast<std::size_t>(n));
  for (auto& d : row_signs) d = rng.sign();
  op.columns_ = sample_without_replacement(n, s, rng);
  for (Index c : op.columns_) op.signs_.push_back(row_signs[static_cast<std::size_t>(c)]);
  return op;
}

ProjectionOperator ProjectionOperator::sgs(Index n, Index s, Index p, std::uint64_t seed, bool rescale) {
  if (s < 1) throw InvalidArgument("sgs: sketch width must be positive");
  if (p < 1 || p > n) throw InvalidArgument("sgs: sparsity p = " + std::to_string(p) + " outside [1, n]");
  Rng rng(seed, stream_id("sgs"));
  ProjectionOperator op(ProjectionMethod::sgs, n, s);
  op.scale_ = 1.0 / std::sqrt(static_cast<double>(p));
  if (rescale) op.scale_ *= std::sqrt(static_cast<double>(n) / static_cast<double>(s));
  op.support_.resize(static_cast<std::size_t>(s));
  for (auto& column : op.support_) {
    for (Index row : sample_support(n, p, rng)) column.emplace_back(row, rng.sign());
  }
  return op;
}

Matrix ProjectionOperator::apply(const Matrix& m) const {
  if (m.cols() != n_) throw InvalidArgument("projection: operand has wrong number of columns");
  const Index rows = m.rows();
  Matrix out(rows, s_);
  switch (method_) {
    case ProjectionMethod::grp:
      out.noalias() = m * dense_;
      break;
    case ProjectionMethod::srht:
      parallel_for(rows, [&](std::ptrdiff_t r) {
        std::vector<double> buf(padded_, 0.0);
        for (Index i = 0; i < n_; ++i) buf[static_cast<std::size_t>(i)] = m(r, i) * signs_[static_cast<std::size_t>(i)];
        fwht(buf);
        for (Index j = 0; j < s_; ++j) out(r, j) = scale_ * buf[static_cast<std::size_t>(columns_[static_cast<std::size_t>(j)])];
      });
      break;
    case ProjectionMethod::ist:
      parallel_for(s_, [&](std::ptrdiff_t j) {
        const auto js = static_cast<std::size_t>(j);
        out.col(j) = (scale_ * signs_[js]) * m.col(columns_[js]);
      });
      break;
    case ProjectionMethod::sgs:
      parallel_for(s_, [&](std::ptrdiff_t j) {
        auto col = out.col(j);
        col.setZero();
        for (const auto& [row, sign] : support_[static_cast<std::size_t>(j)]) col += sign * m.col(row);
        col *= scale_;
      });
      break;
  }
  return out;
}

Matrix ProjectionOperator::dense() const {
  Matrix p = Matrix::Zero(n_, s_);
  switch (method_) {
    case ProjectionMethod::grp:
      p = dense_;
      break;
    case ProjectionMethod::srht:
      for (Index j = 0; j < s_; ++j)
        for (Index i = 0; i < n_; ++i)
          p(i, j) = scale_ * signs_[static_cast<std::size_t>(i)] * hadamard_entry(i, columns_[static_cast<std::size_t>(j)]);
      break;
    case ProjectionMethod::ist:
      for (Index j = 0; j < s_; ++j)
        p(columns_[static_cast<std::size_t>(j)], j) = scale_ * signs_[static_cast<std::size_t>(j)];
      break;
    case ProjectionMethod::sgs:
      for (Index j = 0; j < s_; ++j)
        for (const auto& [row, sign] : support_[static_cast<std::size_t>(j)]) p(row, j) = scale_ * sign;
      break;
  }
  return p;
}

Index ProjectionOperator::nonzeros() const {
  switch (method_) {
    case ProjectionMethod::ist: return s_;
    case ProjectionMethod::sgs: {
      Index nnz = 0;
      for (const auto& column : support_) nnz += static_cast<Index>(column.size());
      return nnz;
    }
    default: return (dense().array() != 0.0).count();
  }
}

ProjectionOperator make_projection(Index n, const SketchPlan& plan) {
  switch (plan.method) {
    case ProjectionMethod::grp: return ProjectionOperator::grp(n, plan.s, plan.seed);
    case ProjectionMethod::srht: return ProjectionOperator::srht(n, plan.s, plan.seed);
    case ProjectionMethod::ist: return ProjectionOperator::ist(n, plan.s, plan.seed);
    case ProjectionMethod::sgs: return ProjectionOperator::sgs(n, plan.s, plan.p, plan.seed, plan.sgs_rescale);
  }
  throw InvalidArgument("unknown projection method");
}

Vector sketch_singular_values(const Matrix& sketch, Index k) {
  if (k < 1 || k > std::min(sketch.rows(), sketch.cols())) throw InvalidArgument("k exceeds the sketch rank bound");
  Eigen::BDCSVD<Matrix> svd(sketch);
  if (svd.info() != Eigen::Success) throw NumericalError("singular value decomposition of the sketch failed");
  return svd.singularValues().head(k);
}

LowRankSpectrum rp_topk(const KernelMatrix& a, Index k, const SketchPlan& plan) {
  const Index n = a.size();
  if (k < 1 || k > n - 1) throw InvalidArgument("rank k must lie in [1, n-1]");
  if (plan.s < k || plan.s > n)
    throw InvalidArgument("sketch width s = " + std::to_string(plan.s) + " must satisfy k <= s <= n");
  const ProjectionOperator p = make_projection(n, plan);
  return tail_complete(sketch_singular_values(p.apply(a.matrix()), k), n);
}

EntropyEstimate rp_entropy(const KernelMatrix& a, double alpha, Index k, const SketchPlan& plan) {
  const auto start = std::chrono::steady_clock::now();
  const LowRankSpectrum spectrum = rp_topk(a, k, plan);
  EntropyEstimate e;
  e.value = lowrank_entropy(spectrum, alpha);
  e.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  e.alpha = alpha;
  e.k = k;
  e.backend = backend_of(plan.method);
  e.s = plan.s;
  e.seed = plan.seed;
  return e;
}

}  // namespace lrr
