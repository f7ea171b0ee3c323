#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "lrr/kernels.hpp"
#include "lrr/spectrum.hpp"

namespace lrr {

enum class Backend { exact, exact_lowrank, grp, srht, ist, sgs, lanczos };

std::string_view to_string(Backend backend);
/// Accepts "exact", "exact-lowrank", "grp", "srht", "ist", "sgs", "lanczos".
Backend parse_backend(std::string_view tag);
bool is_random_projection(Backend backend);

/// How to estimate an entropy: backend, order, rank and sketch parameters.
struct EstimatorConfig {
  Backend backend = Backend::exact_lowrank;
  double alpha = 1.01;
  Index k = 1;
  /// Sketch width (random projections) or iteration count (Lanczos).
  Index s = 0;
  /// Nonzeros per column for sgs.
  Index p = 2;
  std::uint64_t seed = 0;
  /// Multiply sgs projections by sqrt(n/s) so that E[P P^T] = I.
  bool sgs_rescale = false;
};

/// An entropy value with the settings that produced it.
struct EntropyEstimate {
  double value = 0.0;  // bits
  double alpha = 0.0;
  Index k = 0;  // n for the full (exact) entropy
  Backend backend = Backend::exact;
  Index s = 0;  // 0 for dense backends
  std::uint64_t seed = 0;  // 0 for dense backends
  double elapsed = 0.0;  // seconds
};

/// Entropy of one kernel matrix with the configured backend.
EntropyEstimate estimate_entropy(const KernelMatrix& a, const EstimatorConfig& config);

/// Entropy of the trace-normalized Hadamard product of the kernels (a single
/// kernel is its own joint).
EntropyEstimate joint_entropy(std::span<const KernelMatrix> kernels, const EstimatorConfig& config);

/// S(As, B) - S(B).
struct ConditionalEstimate {
  double value = 0.0;
  EntropyEstimate joint;
  EntropyEstimate condition;
  /// Set when the value is below -1e-9; values are never clamped.
  bool negative = false;
};

ConditionalEstimate conditional_entropy(std::span<const KernelMatrix> kernels, const KernelMatrix& condition,
                                        const EstimatorConfig& config);

/// S(As) + S(B) - S(As, B).
struct MutualInformation {
  double value = 0.0;
  EntropyEstimate variables;
  EntropyEstimate target;
  EntropyEstimate joint;
  /// Set when the value is below -1e-9; values are never clamped.
  bool negative = false;
};

MutualInformation mutual_information(std::span<const KernelMatrix> kernels, const KernelMatrix& target,
                                     const EstimatorConfig& config);

}  // namespace lrr
