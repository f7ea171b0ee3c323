#include "lrr/bench.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "lrr/error.hpp"
#include "lrr/parallel.hpp"
#include "lrr/spectrum.hpp"

namespace lrr {
namespace {

constexpr std::array<std::pair<Noise, std::string_view>, 4> kNoiseNames{{
    {Noise::gaussian, "gaussian"},
    {Noise::uniform, "uniform"},
    {Noise::student_t3, "student_t3"},
    {Noise::rademacher, "rademacher"},
}};

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double mean_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  return v.empty() ? 0.0 : m / static_cast<double>(v.size());
}

std::uint64_t trial_seed(std::uint64_t seed, std::string_view tag, std::uint64_t a, std::uint64_t b = 0) {
  return mix64(seed ^ stream_id(tag, a, b));
}

void check_sweep(const SweepConfig& config) {
  if (config.n < 2 || config.k < 1 || 2 * config.k > config.n)
    throw InvalidArgument("sweep needs n >= 2k and k >= 1");
  if (config.trials < 1) throw InvalidArgument("sweep needs at least one trial");
  if (config.methods.empty()) throw InvalidArgument("sweep needs at least one method");
}

const std::vector<Index>& grid_for(const SweepConfig& config, Backend method) {
  if (method == Backend::lanczos && !config.lanczos_s_grid.empty()) return config.lanczos_s_grid;
  return config.s_grid;
}

bool is_dense(Backend method) { return method == Backend::exact || method == Backend::exact_lowrank; }

struct Trial {
  KernelMatrix kernel;
  Vector eigenvalues;
};

Trial make_trial(Index n, double c, std::uint64_t seed) {
  KernelMatrix a = synth_powerlaw_kernel(n, c, seed);
  Vector eig = eigenvalues_descending(a);
  return Trial{std::move(a), std::move(eig)};
}

double reference(const Trial& t, const SweepConfig& config, double alpha, Backend method) {
  if (method == Backend::exact) return spectrum_entropy(t.eigenvalues, alpha);
  return lowrank_entropy(lowrank_from_eigenvalues(t.eigenvalues, config.k), alpha);
}

struct Sample {
  double rel_error = 0.0;
  double seconds = 0.0;
};

Sample run_method(const Trial& t, const SweepConfig& config, Backend method, Index s, double alpha,
                  std::uint64_t seed) {
  EstimatorConfig e;
  e.backend = method;
  e.alpha = alpha;
  e.k = config.k;
  e.s = is_dense(method) ? 0 : s;
  e.p = config.p;
  e.seed = seed;
  e.sgs_rescale = config.sgs_rescale;
  const EntropyEstimate est = estimate_entropy(t.kernel, e);
  // The dense backends are scored against the matching dense reference.
  const double ref = method == Backend::exact ? reference(t, config, alpha, Backend::exact)
                                              : reference(t, config, alpha, Backend::exact_lowrank);
  const double err = std::abs(est.value - ref);
  return Sample{ref != 0.0 ? err / std::abs(ref) : err, config.record_timing ? est.elapsed : 0.0};
}

SweepRow summarize(Backend method, Index s, double alpha, double c, const std::vector<Sample>& samples) {
  std::vector<double> errs, secs;
  for (const auto& x : samples) {
    errs.push_back(x.rel_error);
    secs.push_back(x.seconds);
  }
  return SweepRow{method, s, alpha, c, mean_of(errs), sample_sd(errs), mean_of(secs)};
}

// Rows for one (alpha, c) point: every method at every s of `widths(method)`.
template <class Widths>
std::vector<SweepRow> sweep_point(const SweepConfig& config, const std::vector<Trial>& trials, double alpha, double c,
                                  std::uint64_t point, Widths&& widths) {
  std::vector<SweepRow> rows;
  for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
    const Backend method = config.methods[mi];
    const std::vector<Index> grid = is_dense(method) ? std::vector<Index>{0} : widths(method);
    for (Index s : grid) {
      std::vector<Sample> samples(trials.size());
      parallel_for(static_cast<std::ptrdiff_t>(trials.size()), [&](std::ptrdiff_t t) {
        const std::uint64_t seed =
            trial_seed(config.seed, to_string(method), static_cast<std::uint64_t>(t),
                       mix64(static_cast<std::uint64_t>(s)) ^ point);
        samples[static_cast<std::size_t>(t)] = run_method(trials[static_cast<std::size_t>(t)], config, method, s, alpha,
                                                          seed);
      });
      rows.push_back(summarize(method, s, alpha, c, samples));
    }
  }
  return rows;
}

std::vector<Trial> make_trials(const SweepConfig& config, double c, std::uint64_t point) {
  std::vector<std::optional<Trial>> slots(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, [&](std::ptrdiff_t t) {
    slots[static_cast<std::size_t>(t)] =
        make_trial(config.n, c, trial_seed(config.seed, "kernel", static_cast<std::uint64_t>(t), point));
  });
  std::vector<Trial> trials;
  for (auto& s : slots) trials.push_back(std::move(*s));
  return trials;
}

}  // namespace

std::string_view to_string(Noise noise) {
  for (const auto& [v, name] : kNoiseNames)
    if (v == noise) return name;
  return "?";
}

Noise parse_noise(std::string_view tag) {
  for (const auto& [v, name] : kNoiseNames)
    if (name == tag) return v;
  throw InvalidArgument("unknown noise distribution '" + std::string(tag) + "'");
}

double draw_noise(Noise noise, Rng& rng) {
  switch (noise) {
    case Noise::gaussian: return rng.normal();
    case Noise::uniform: return std::numbers::sqrt3 * (2.0 * rng.uniform() - 1.0);
    case Noise::student_t3: {
      const double z = rng.normal();
      double chi2 = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double g = rng.normal();
        chi2 += g * g;
      }
      return z / std::sqrt(chi2 / 3.0) / std::numbers::sqrt3;
    }
    case Noise::rademacher: return rng.sign();
  }
  return 0.0;
}

std::vector<RobustnessRow> robustness_sim(const RobustnessConfig& config) {
  if (config.n < 2 || config.d < 1 || config.trials < 2) throw InvalidArgument("robustness: need n >= 2, d >= 1, trials >= 2");
  if (!(config.epsilon >= 0.0)) throw InvalidArgument("robustness: epsilon must be non-negative");
  for (Index k : config.ks)
    if (k < 1 || k > config.n - 1) throw InvalidArgument("robustness: k outside [1, n-1]");
  for (double a : config.alphas)
    if (!(a > 0.0)) throw InvalidArgument("robustness: alpha must be positive");

  Rng base_rng(config.seed, stream_id("robust-base"));
  Matrix base(config.n, config.d);
  for (Index j = 0; j < config.d; ++j)
    for (Index i = 0; i < config.n; ++i) base(i, j) = config.base_sd * base_rng.normal();

  const std::size_t na = config.alphas.size();
  const std::size_t nk = config.ks.size() + 1;  // slot 0 is the full entropy
  std::vector<RobustnessRow> rows;
  for (std::size_t ni = 0; ni < config.noises.size(); ++ni) {
    const Noise noise = config.noises[ni];
    // values[trial][alpha][k-slot] for entropy and information potential
    std::vector<std::vector<double>> ent(static_cast<std::size_t>(config.trials), std::vector<double>(na * nk));
    std::vector<std::vector<double>> ip(static_cast<std::size_t>(config.trials), std::vector<double>(na * nk));
    parallel_for(config.trials, [&](std::ptrdiff_t t) {
      Rng rng(config.seed, stream_id("robust-noise", static_cast<std::uint64_t>(noise), static_cast<std::uint64_t>(t)));
      Matrix y = base;
      for (Index j = 0; j < config.d; ++j)
        for (Index i = 0; i < config.n; ++i) y(i, j) += config.epsilon * draw_noise(noise, rng);
      const KernelMatrix a = normalize(linear_gram(DataMatrix(std::move(y))));
      const Vector eig = eigenvalues_descending(a);
      auto& e = ent[static_cast<std::size_t>(t)];
      auto& p = ip[static_cast<std::size_t>(t)];
      for (std::size_t ai = 0; ai < na; ++ai) {
        const double alpha = config.alphas[ai];
        const bool shannon = std::abs(alpha - 1.0) < kShannonWindow;
        e[ai * nk] = spectrum_entropy(eig, alpha);
        p[ai * nk] = shannon ? std::nan("") : information_potential(eig, alpha);
        for (std::size_t ki = 1; ki < nk; ++ki) {
          const LowRankSpectrum spec = lowrank_from_eigenvalues(eig, config.ks[ki - 1]);
          e[ai * nk + ki] = lowrank_entropy(spec, alpha);
          p[ai * nk + ki] = shannon ? std::nan("") : information_potential(spec, alpha);
        }
      }
    });
    const double scale = static_cast<double>(config.n);
    for (std::size_t ai = 0; ai < na; ++ai) {
      for (std::size_t ki = 0; ki < nk; ++ki) {
        std::vector<double> es, ps;
        for (Index t = 0; t < config.trials; ++t) {
          es.push_back(ent[static_cast<std::size_t>(t)][ai * nk + ki]);
          ps.push_back(ip[static_cast<std::size_t>(t)][ai * nk + ki]);
        }
        rows.push_back(RobustnessRow{noise, config.alphas[ai], ki == 0 ? 0 : config.ks[ki - 1],
                                     scale * sample_sd(es), scale * sample_sd(ps)});
      }
    }
  }
  return rows;
}

Vector synth_exp_spectrum(Index n, double r) {
  if (n < 2) throw InvalidArgument("spectrum needs n >= 2");
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = std::exp(-r * static_cast<double>(i) / static_cast<double>(n));
  return v / v.sum();
}

Vector powerlaw_spectrum(Index n, double c) {
  if (n < 2) throw InvalidArgument("spectrum needs n >= 2");
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = std::pow(static_cast<double>(i + 1), -c);
  return v / v.sum();
}

KernelMatrix synth_powerlaw_kernel(Index n, double c, std::uint64_t seed) {
  const Vector sigma = powerlaw_spectrum(n, c);
  Rng rng(seed, stream_id("powerlaw-basis"));
  Matrix g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix phi = qr.householderQ();
  Matrix a = (phi * sigma.asDiagonal()) * phi.transpose();
  a = (0.5 * (a + a.transpose())).eval();
  a /= a.trace();
  return KernelMatrix::from_trace_one(std::move(a));
}

std::vector<SweepRow> mre_sweep(const SweepConfig& config) {
  check_sweep(config);
  const std::vector<Trial> trials = make_trials(config, config.c, 0);
  return sweep_point(config, trials, config.alpha, config.c, 0,
                     [&](Backend m) { return grid_for(config, m); });
}

std::vector<SweepRow> alpha_sweep(const SweepConfig& config) {
  check_sweep(config);
  const std::vector<Trial> trials = make_trials(config, config.c, 0);
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < config.alphas.size(); ++i) {
    auto part = sweep_point(config, trials, config.alphas[i], config.c, mix64(1000 + i), [&](Backend m) {
      const auto& g = grid_for(config, m);
      if (g.empty()) throw InvalidArgument("alpha sweep needs a nonempty s grid");
      return std::vector<Index>{g.back()};
    });
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::vector<SweepRow> edr_sweep(const SweepConfig& config) {
  check_sweep(config);
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < config.cs.size(); ++i) {
    const std::uint64_t point = mix64(2000 + i);
    const std::vector<Trial> trials = make_trials(config, config.cs[i], point);
    auto part = sweep_point(config, trials, config.alpha, config.cs[i], point, [&](Backend m) {
      const auto& g = grid_for(config, m);
      if (g.empty()) throw InvalidArgument("edr sweep needs a nonempty s grid");
      return std::vector<Index>{g.back()};
    });
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

Matrix nemenyi_confidence(const Vector& avg_ranks, Index datasets) {
  const Index m = avg_ranks.size();
  if (m < 2) throw InvalidArgument("Nemenyi test needs at least two methods");
  if (datasets < 1) throw InvalidArgument("Nemenyi test needs at least one dataset");
  const double se = std::sqrt(static_cast<double>(m * (m + 1)) / (6.0 * static_cast<double>(datasets)));
  Matrix p(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) p(i, j) = i == j ? 0.5 : standard_normal_cdf((avg_ranks(j) - avg_ranks(i)) / se);
  return p;
}

}  // namespace lrr
