#include "lrr/featsel.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "lrr/error.hpp"
#include "lrr/parallel.hpp"
#include "lrr/shannon.hpp"

namespace lrr {
namespace {

constexpr std::array<std::pair<Criterion, std::string_view>, 8> kCriterionNames{{
    {Criterion::lrmi, "lrmi"},
    {Criterion::mrmi, "mrmi"},
    {Criterion::mifs, "mifs"},
    {Criterion::fou, "fou"},
    {Criterion::mrmr, "mrmr"},
    {Criterion::jmi, "jmi"},
    {Criterion::cmim, "cmim"},
    {Criterion::disr, "disr"},
}};

// I({a, b}; y)
double pair_mi(std::span<const int> a, std::span<const int> b, std::span<const int> y) {
  return plugin_entropy({a, b}) + plugin_entropy({y}) - plugin_entropy({a, b, y});
}

// Dense relabeling of arbitrary class ids, in order of first appearance.
std::vector<int> dense_codes(std::span<const int> values) {
  std::map<int, int> codes;
  std::vector<int> out;
  out.reserve(values.size());
  for (int v : values) out.push_back(codes.try_emplace(v, static_cast<int>(codes.size())).first->second);
  return out;
}

EstimatorConfig estimator_for(const SelectionConfig& config, Index n) {
  EstimatorConfig e;
  e.alpha = config.alpha;
  e.seed = config.seed;
  e.p = config.p;
  if (config.criterion == Criterion::mrmi) {
    e.backend = Backend::exact;
    e.k = n;
    return e;
  }
  if (config.k < 1 || config.k > n - 1)
    throw InvalidArgument("rank k = " + std::to_string(config.k) + " outside [1, n-1] for n = " + std::to_string(n));
  e.backend = config.backend;
  e.k = config.k;
  if (config.backend != Backend::exact && config.backend != Backend::exact_lowrank)
    e.s = std::min(config.sketch_width(), n);
  return e;
}

}  // namespace

std::string_view to_string(Criterion criterion) {
  for (const auto& [c, name] : kCriterionNames)
    if (c == criterion) return name;
  return "?";
}

Criterion parse_criterion(std::string_view tag) {
  for (const auto& [c, name] : kCriterionNames)
    if (name == tag) return c;
  throw InvalidArgument("unknown criterion '" + std::string(tag) + "'");
}

bool is_shannon_baseline(Criterion criterion) {
  return criterion != Criterion::lrmi && criterion != Criterion::mrmi;
}

DataMatrix discretize_equal_width(const DataMatrix& x, int bins) {
  if (bins < 2) throw InvalidArgument("discretization needs at least 2 bins");
  Matrix out(x.samples(), x.features());
  for (Index j = 0; j < x.features(); ++j) {
    const auto col = x.values().col(j);
    const double lo = col.minCoeff();
    const double hi = col.maxCoeff();
    if (!(hi > lo)) {
      out.col(j).setZero();
      continue;
    }
    const double width = (hi - lo) / bins;
    for (Index i = 0; i < x.samples(); ++i) {
      const double b = std::floor((col(i) - lo) / width);
      out(i, j) = std::clamp(b, 0.0, static_cast<double>(bins - 1));
    }
  }
  return DataMatrix(std::move(out), x.labels());
}

std::vector<int> discrete_column(const DataMatrix& x, Index column) {
  if (column < 0 || column >= x.features()) throw InvalidArgument("column index out of range");
  std::vector<int> out(static_cast<std::size_t>(x.samples()));
  for (Index i = 0; i < x.samples(); ++i) {
    const double v = x.values()(i, column);
    if (v != std::floor(v)) throw InvalidArgument("column " + std::to_string(column) + " is not discrete");
    out[static_cast<std::size_t>(i)] = static_cast<int>(v);
  }
  return out;
}

double baseline_score(Criterion criterion, std::span<const int> candidate, std::span<const std::vector<int>> selected,
                      std::span<const int> y, double beta) {
  const double relevance = plugin_mi(candidate, y);
  if (selected.empty()) {
    if (!is_shannon_baseline(criterion))
      throw InvalidArgument("criterion '" + std::string(to_string(criterion)) + "' is not a Shannon baseline");
    return relevance;
  }
  const double l = static_cast<double>(selected.size());
  double acc = 0.0;
  switch (criterion) {
    case Criterion::mifs:
      for (const auto& s : selected) acc += plugin_mi(candidate, s);
      return relevance - beta * acc;
    case Criterion::fou:
      for (const auto& s : selected) acc += plugin_mi(candidate, s) - plugin_cmi(candidate, s, y);
      return relevance - acc;
    case Criterion::mrmr:
      for (const auto& s : selected) acc += plugin_mi(candidate, s);
      return relevance - acc / l;
    case Criterion::jmi:
      for (const auto& s : selected) acc += pair_mi(candidate, s, y);
      return acc;
    case Criterion::cmim: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& s : selected) best = std::min(best, plugin_cmi(candidate, y, s));
      return best;
    }
    case Criterion::disr:
      for (const auto& s : selected) {
        const double h = plugin_entropy({candidate, std::span<const int>(s), y});
        acc += h > 0.0 ? pair_mi(candidate, s, y) / h : 0.0;
      }
      return acc;
    default:
      throw InvalidArgument("criterion '" + std::string(to_string(criterion)) + "' is not a Shannon baseline");
  }
}

RenyiMiScorer::RenyiMiScorer(const DataMatrix& x, std::span<const int> y, const SelectionConfig& config)
    : estimator_(estimator_for(config, x.samples())),
      label_(normalize(label_gram(y, config.sigma, config.delta_label_kernel))) {
  if (static_cast<Index>(y.size()) != x.samples()) throw InvalidArgument("label vector length mismatch");
  features_.reserve(static_cast<std::size_t>(x.features()));
  for (Index j = 0; j < x.features(); ++j) {
    const std::array<Index, 1> col{j};
    features_.push_back(normalize(gaussian_gram(x, config.sigma, col)));
  }
  label_entropy_ = entropy(label_);
}

double RenyiMiScorer::entropy(const KernelMatrix& a) const { return estimate_entropy(a, estimator_).value; }

double RenyiMiScorer::mi_with(const KernelMatrix& joint) const {
  const std::array<KernelMatrix, 2> pair{joint, label_};
  return entropy(joint) + label_entropy_ - entropy(hadamard_joint(pair));
}

double RenyiMiScorer::score(Index candidate) const {
  const KernelMatrix& a = features_.at(static_cast<std::size_t>(candidate));
  if (!running_) return mi_with(a);
  const std::array<KernelMatrix, 2> pair{*running_, a};
  return mi_with(hadamard_joint(pair));
}

void RenyiMiScorer::select(Index feature) {
  const KernelMatrix& a = features_.at(static_cast<std::size_t>(feature));
  if (running_) {
    const std::array<KernelMatrix, 2> pair{*running_, a};
    running_ = hadamard_joint(pair);
  } else {
    running_ = a;
  }
  selected_.push_back(feature);
  current_score_ = mi_with(*running_);
}

SelectionTrace greedy_select(const DataMatrix& x, const SelectionConfig& config) {
  if (!x.labels()) throw InvalidArgument("feature selection needs class labels");
  const Index d = x.features();
  if (config.m < 1 || config.m > d)
    throw InvalidArgument("cannot select m = " + std::to_string(config.m) + " of " + std::to_string(d) + " features");
  const std::vector<int> y = dense_codes(*x.labels());

  const bool shannon = is_shannon_baseline(config.criterion);
  std::optional<RenyiMiScorer> renyi;
  std::vector<std::vector<int>> discrete;
  if (shannon) {
    const DataMatrix binned = discretize_equal_width(x, config.bins);
    for (Index j = 0; j < d; ++j) discrete.push_back(discrete_column(binned, j));
  } else {
    renyi.emplace(x, y, config);
  }

  SelectionTrace trace;
  std::vector<bool> taken(static_cast<std::size_t>(d), false);
  std::vector<std::vector<int>> chosen;
  for (Index step = 0; step < config.m; ++step) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> scores(static_cast<std::size_t>(d), -std::numeric_limits<double>::infinity());
    parallel_for(d, [&](std::ptrdiff_t j) {
      const auto js = static_cast<std::size_t>(j);
      if (taken[js]) return;
      scores[js] = shannon ? baseline_score(config.criterion, discrete[js], chosen, y, config.beta) : renyi->score(j);
    });
    Index best = -1;
    for (Index j = 0; j < d; ++j) {
      const auto js = static_cast<std::size_t>(j);
      if (taken[js]) continue;
      if (best < 0 || scores[js] > scores[static_cast<std::size_t>(best)]) best = j;
    }
    const auto bs = static_cast<std::size_t>(best);
    taken[bs] = true;
    if (shannon) {
      chosen.push_back(discrete[bs]);
    } else {
      const double before = renyi->current();
      renyi->select(best);
      if (step > 0 && renyi->current() < before - 1e-9) {
        std::ostringstream msg;
        msg << "step " << step << ": I(S+x" << best << "; Y) = " << renyi->current() << " < I(S; Y) = " << before;
        trace.findings.push_back(msg.str());
      }
    }
    trace.features.push_back(best);
    trace.scores.push_back(scores[bs]);
    trace.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return trace;
}

}  // namespace lrr
