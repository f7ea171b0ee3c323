#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrr/estimator.hpp"
#include "lrr/kernels.hpp"

namespace lrr {

enum class Criterion { lrmi, mrmi, mifs, fou, mrmr, jmi, cmim, disr };

std::string_view to_string(Criterion criterion);
Criterion parse_criterion(std::string_view tag);
/// True for the six plug-in Shannon criteria.
bool is_shannon_baseline(Criterion criterion);

struct SelectionConfig {
  Criterion criterion = Criterion::lrmi;
  double alpha = 1.01;
  Index k = 100;
  /// Backend for lrmi; mrmi always uses the full exact entropy.
  Backend backend = Backend::lanczos;
  /// Sketch width / Lanczos steps; 0 means k + 50.
  Index s = 0;
  Index p = 2;
  Index m = 10;
  /// MIFS redundancy weight.
  double beta = 1.0;
  int bins = 5;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  /// Kronecker-delta label kernel instead of the Gaussian.
  bool delta_label_kernel = false;

  Index sketch_width() const { return s > 0 ? s : k + 50; }
};

struct SelectionTrace {
  std::vector<Index> features;
  std::vector<double> scores;
  std::vector<double> seconds;
  /// Diagnostics that are reported rather than raised, e.g. a measured
  /// decrease of the joint information after adding the chosen feature.
  std::vector<std::string> findings;
};

/// Equal-width binning of each column over [min, max] into bins 0..bins-1;
/// the maximum lands in the top bin and constant columns map to 0.
DataMatrix discretize_equal_width(const DataMatrix& x, int bins);

/// Integer codes of one column of a discretized matrix.
std::vector<int> discrete_column(const DataMatrix& x, Index column);

/// Table-style Shannon criterion score of `candidate` given the already
/// selected columns. Every criterion reduces to I(X; Y) when nothing is selected.
double baseline_score(Criterion criterion, std::span<const int> candidate,
                      std::span<const std::vector<int>> selected, std::span<const int> y, double beta = 1.0);

/// Renyi mutual information between the joint of (selected, candidate) and
/// the label, from cached per-feature kernels.
class RenyiMiScorer {
 public:
  RenyiMiScorer(const DataMatrix& x, std::span<const int> y, const SelectionConfig& config);

  /// I({selected..., candidate}; Y).
  double score(Index candidate) const;
  /// I({selected...}; Y), or 0 when nothing is selected yet.
  double current() const { return current_score_; }
  void select(Index feature);

  const KernelMatrix& feature_kernel(Index j) const { return features_[static_cast<std::size_t>(j)]; }
  const KernelMatrix& label_kernel() const { return label_; }

 private:
  double entropy(const KernelMatrix& a) const;
  double mi_with(const KernelMatrix& joint) const;

  EstimatorConfig estimator_;
  std::vector<KernelMatrix> features_;
  KernelMatrix label_;
  double label_entropy_ = 0.0;
  std::vector<Index> selected_;
  std::optional<KernelMatrix> running_;  // Hadamard joint of the selected kernels
  double current_score_ = 0.0;
};

/// Greedy forward selection of config.m features maximizing the criterion;
/// ties go to the lowest feature index. Requires labels on `x`.
SelectionTrace greedy_select(const DataMatrix& x, const SelectionConfig& config);

}  // namespace lrr
