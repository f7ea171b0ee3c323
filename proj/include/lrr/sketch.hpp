#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "lrr/estimator.hpp"
#include "lrr/kernels.hpp"
#include "lrr/spectrum.hpp"

namespace lrr {

enum class ProjectionMethod { grp, srht, ist, sgs };

std::string_view to_string(ProjectionMethod method);
ProjectionMethod projection_method(Backend backend);
Backend backend_of(ProjectionMethod method);

struct SketchPlan {
  ProjectionMethod method = ProjectionMethod::grp;
  Index s = 0;
  /// Nonzeros per column; sgs only.
  Index p = 2;
  std::uint64_t seed = 0;
  /// sgs only: scale by sqrt(n/s) so that E[P P^T] = I.
  bool sgs_rescale = false;
};

/// An n x s random projection P, stored in whatever form applies fastest:
/// dense (grp), signs plus sampled Hadamard columns (srht), signed sampled
/// basis vectors (ist) or sparse signed columns (sgs).
class ProjectionOperator {
 public:
  ProjectionMethod method() const { return method_; }
  Index rows() const { return n_; }
  Index cols() const { return s_; }

  /// M P for any matrix M with n columns, using the structured path.
  Matrix apply(const Matrix& m) const;
  /// P itself.
  Matrix dense() const;
  Index nonzeros() const;

  /// P = sqrt(n/s) G, G the orthonormalized n x s Gaussian draw.
  static ProjectionOperator grp(Index n, Index s, std::uint64_t seed);
  /// P = sqrt(1/s) D H S with H the +-1 Hadamard matrix of order next_pow2(n);
  /// rows past n are zero padding.
  static ProjectionOperator srht(Index n, Index s, std::uint64_t seed);
  /// Explicit SRHT from its parts: `signs` has n entries, `columns` indexes
  /// distinct Hadamard columns in [0, next_pow2(n)).
  static ProjectionOperator srht(Index n, std::vector<double> signs, std::vector<Index> columns);
  /// P = sqrt(n/s) D S.
  static ProjectionOperator ist(Index n, Index s, std::uint64_t seed);
  /// Each column: p distinct rows with random signs, scaled by 1/sqrt(p)
  /// (times sqrt(n/s) when `rescale`).
  static ProjectionOperator sgs(Index n, Index s, Index p, std::uint64_t seed, bool rescale = false);

 private:
  ProjectionOperator(ProjectionMethod method, Index n, Index s) : method_(method), n_(n), s_(s) {}

  ProjectionMethod method_;
  Index n_;
  Index s_;
  double scale_ = 1.0;
  Matrix dense_;                      // grp
  std::vector<double> signs_;         // srht: per input row; ist: per output column
  std::vector<Index> columns_;        // srht: Hadamard columns; ist: source rows
  std::vector<std::vector<std::pair<Index, double>>> support_;  // sgs: (row, sign) per column
  std::size_t padded_ = 0;            // srht
};

ProjectionOperator make_projection(Index n, const SketchPlan& plan);

/// Leading k singular values of an n x s sketch (bidiagonalization SVD).
Vector sketch_singular_values(const Matrix& sketch, Index k);

/// Top-k eigenvalue estimates of `a` from the singular values of A P.
LowRankSpectrum rp_topk(const KernelMatrix& a, Index k, const SketchPlan& plan);

/// lowrank_entropy(rp_topk(...)) with provenance.
EntropyEstimate rp_entropy(const KernelMatrix& a, double alpha, Index k, const SketchPlan& plan);

}  // namespace lrr
