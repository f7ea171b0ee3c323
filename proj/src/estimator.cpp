#include "lrr/estimator.hpp"

#include <array>
#include <chrono>
#include <string>
#include <vector>

#include "lrr/error.hpp"
#include "lrr/lanczos.hpp"
#include "lrr/sketch.hpp"

namespace lrr {
namespace {

constexpr std::array<std::pair<Backend, std::string_view>, 7> kBackendNames{{
    {Backend::exact, "exact"},
    {Backend::exact_lowrank, "exact-lowrank"},
    {Backend::grp, "grp"},
    {Backend::srht, "srht"},
    {Backend::ist, "ist"},
    {Backend::sgs, "sgs"},
    {Backend::lanczos, "lanczos"},
}};

constexpr double kNegativeSlack = 1e-9;

}  // namespace

std::string_view to_string(Backend backend) {
  for (const auto& [b, name] : kBackendNames)
    if (b == backend) return name;
  return "?";
}

Backend parse_backend(std::string_view tag) {
  for (const auto& [b, name] : kBackendNames)
    if (name == tag) return b;
  throw InvalidArgument("unknown backend '" + std::string(tag) + "'");
}

bool is_random_projection(Backend backend) {
  return backend == Backend::grp || backend == Backend::srht || backend == Backend::ist || backend == Backend::sgs;
}

EntropyEstimate estimate_entropy(const KernelMatrix& a, const EstimatorConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  EntropyEstimate e;
  switch (config.backend) {
    case Backend::exact:
      e.value = full_entropy(a, config.alpha);
      e.alpha = config.alpha;
      e.k = a.size();
      e.backend = Backend::exact;
      break;
    case Backend::exact_lowrank:
      e.value = lowrank_entropy(exact_spectrum(a, config.k), config.alpha);
      e.alpha = config.alpha;
      e.k = config.k;
      e.backend = Backend::exact_lowrank;
      break;
    case Backend::lanczos:
      e = lanczos_entropy(a, config.alpha, config.k, config.s, config.seed);
      break;
    default: {
      SketchPlan plan;
      plan.method = projection_method(config.backend);
      plan.s = config.s;
      plan.p = config.p;
      plan.seed = config.seed;
      plan.sgs_rescale = config.sgs_rescale;
      e = rp_entropy(a, config.alpha, config.k, plan);
      break;
    }
  }
  e.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return e;
}

EntropyEstimate joint_entropy(std::span<const KernelMatrix> kernels, const EstimatorConfig& config) {
  if (kernels.empty()) throw InvalidArgument("joint_entropy needs at least one kernel");
  if (kernels.size() == 1) return estimate_entropy(kernels.front(), config);
  return estimate_entropy(hadamard_joint(kernels), config);
}

namespace {

std::vector<KernelMatrix> with_target(std::span<const KernelMatrix> kernels, const KernelMatrix& target) {
  std::vector<KernelMatrix> all(kernels.begin(), kernels.end());
  all.push_back(target);
  return all;
}

}  // namespace

ConditionalEstimate conditional_entropy(std::span<const KernelMatrix> kernels, const KernelMatrix& condition,
                                        const EstimatorConfig& config) {
  if (kernels.empty()) throw InvalidArgument("conditional_entropy needs at least one kernel");
  ConditionalEstimate out;
  out.joint = joint_entropy(with_target(kernels, condition), config);
  out.condition = estimate_entropy(condition, config);
  out.value = out.joint.value - out.condition.value;
  out.negative = out.value < -kNegativeSlack;
  return out;
}

MutualInformation mutual_information(std::span<const KernelMatrix> kernels, const KernelMatrix& target,
                                     const EstimatorConfig& config) {
  if (kernels.empty()) throw InvalidArgument("mutual_information needs at least one kernel");
  MutualInformation out;
  out.variables = joint_entropy(kernels, config);
  out.target = estimate_entropy(target, config);
  out.joint = joint_entropy(with_target(kernels, target), config);
  out.value = out.variables.value + out.target.value - out.joint.value;
  out.negative = out.value < -kNegativeSlack;
  return out;
}

}  // namespace lrr
