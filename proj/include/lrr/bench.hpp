#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lrr/estimator.hpp"
#include "lrr/kernels.hpp"
#include "lrr/rng.hpp"

namespace lrr {

enum class Noise { gaussian, uniform, student_t3, rademacher };

std::string_view to_string(Noise noise);
Noise parse_noise(std::string_view tag);

/// One zero-mean, unit-variance draw: N(0,1), U(-sqrt3, sqrt3), t(3)/sqrt3 or +-1.
double draw_noise(Noise noise, Rng& rng);

struct RobustnessConfig {
  Index n = 100;
  Index d = 400;
  double epsilon = 0.01;
  Index trials = 100;
  std::vector<Noise> noises{Noise::gaussian, Noise::uniform, Noise::student_t3, Noise::rademacher};
  std::vector<double> alphas{0.5, 2.0};
  std::vector<Index> ks{10, 25, 50};
  std::uint64_t seed = 0;
  /// Standard deviation of the base samples.
  double base_sd = 0.1;
};

/// Sample standard deviations (times n) over the perturbation trials.
struct RobustnessRow {
  Noise noise;
  double alpha;
  Index k;  // 0 for the full matrix-based entropy
  double entropy_sd;
  double ip_sd;
};

/// Base samples x_i ~ N(0, base_sd^2)^d drawn once; each trial perturbs them
/// as y_i = x_i + epsilon p_i and evaluates the linear-kernel entropies.
std::vector<RobustnessRow> robustness_sim(const RobustnessConfig& config);

/// lambda_i = exp(-r i / n), i = 1..n, normalized to sum 1 (descending).
Vector synth_exp_spectrum(Index n, double r);

/// Sigma_ii = i^-c, i = 1..n, normalized to sum 1.
Vector powerlaw_spectrum(Index n, double c);

/// Phi diag(powerlaw_spectrum(n, c)) Phi^T with Phi the orthogonal factor of
/// a seeded Gaussian matrix. Trace one but not unit-diagonal.
KernelMatrix synth_powerlaw_kernel(Index n, double c, std::uint64_t seed);

struct SweepConfig {
  Index n = 1024;
  double c = 1.0;
  Index k = 64;
  double alpha = 1.5;
  std::vector<Backend> methods{Backend::grp, Backend::srht, Backend::ist, Backend::sgs, Backend::lanczos};
  /// Sketch widths for the random projections.
  std::vector<Index> s_grid{64, 128, 256, 512};
  /// Iteration counts for Lanczos (s_grid when empty).
  std::vector<Index> lanczos_s_grid{64, 72, 80, 88, 96};
  Index trials = 20;
  std::uint64_t seed = 0;
  Index p = 2;
  bool sgs_rescale = false;
  /// Varying parameter grids for alpha_sweep / edr_sweep; they use the last
  /// entry of the corresponding s grid as the fixed width.
  std::vector<double> alphas{0.5, 0.99, 1.01, 1.5, 2.0, 3.0, 4.0};
  std::vector<double> cs{0.0, 0.5, 1.0, 1.5, 2.0};
  /// Record wall-clock seconds; when false the seconds column is 0 so that
  /// output bytes depend only on the configuration.
  bool record_timing = true;
};

struct SweepRow {
  Backend method;
  Index s;
  double alpha;
  double c;
  double mre;
  double sd;
  double seconds;
};

/// Mean relative error |S_hat - S| / S against the dense reference, per method and s.
std::vector<SweepRow> mre_sweep(const SweepConfig& config);
/// As mre_sweep over config.alphas at fixed s.
std::vector<SweepRow> alpha_sweep(const SweepConfig& config);
/// As mre_sweep over config.cs at fixed s.
std::vector<SweepRow> edr_sweep(const SweepConfig& config);

/// p_ij = Phi((R_j - R_i) / sqrt(M (M + 1) / (6 N))): confidence that method i
/// outperforms method j given average ranks R (lower is better).
Matrix nemenyi_confidence(const Vector& avg_ranks, Index datasets);

double standard_normal_cdf(double x);

}  // namespace lrr
