#include "lrr/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "lrr/error.hpp"

namespace lrr {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("entropy order alpha must be positive");
}

bool is_shannon(double alpha) { return std::abs(alpha - 1.0) < kShannonWindow; }

double clean(double lambda) { return lambda < kZeroEigenvalue ? 0.0 : lambda; }

double power_term(double lambda, double alpha) {
  lambda = clean(lambda);
  return lambda == 0.0 ? 0.0 : std::pow(lambda, alpha);
}

double shannon_term(double lambda) {
  lambda = clean(lambda);
  return lambda == 0.0 ? 0.0 : -lambda * std::log2(lambda);
}

// The tail is zero when its total mass is, so a tail spread over many slots
// is not dropped while the eigenvalues it replaces would have been kept.
double tail_mass(const LowRankSpectrum& s) {
  const double mass = static_cast<double>(s.n - s.k()) * s.tail;
  return mass < kZeroEigenvalue ? 0.0 : mass;
}

double tail_power(const LowRankSpectrum& s, double alpha) {
  const double rest = static_cast<double>(s.n - s.k());
  return tail_mass(s) == 0.0 ? 0.0 : rest * std::pow(s.tail, alpha);
}

double tail_shannon(const LowRankSpectrum& s) {
  return tail_mass(s) == 0.0 ? 0.0 : -tail_mass(s) * std::log2(s.tail);
}

}  // namespace

LowRankSpectrum tail_complete(const Vector& top_eigs, Index n) {
  const Index k = top_eigs.size();
  if (k < 1 || k > n - 1)
    throw InvalidArgument("rank k = " + std::to_string(k) + " outside [1, n-1] for n = " + std::to_string(n));
  Vector top = top_eigs;
  for (Index i = 0; i < k; ++i) {
    if (!std::isfinite(top(i))) throw NumericalError("non-finite eigenvalue estimate");
    if (top(i) < -1e-8)
      throw NumericalError("invalid eigenvalue estimate " + std::to_string(top(i)) + " at position " +
                           std::to_string(i));
  }
  // The oversum test sees the raw estimates, so one entry above 1 is not
  // hidden by the clamp.
  const double raw = top.cwiseMax(0.0).sum();
  if (raw > 1.0 + 1e-6)
    throw NumericalError("inconsistent spectrum: top-" + std::to_string(k) + " estimates sum to " +
                         std::to_string(raw));
  top = top.cwiseMax(0.0).cwiseMin(1.0);
  std::sort(top.data(), top.data() + k, std::greater<>());
  const double sum = top.sum();
  LowRankSpectrum out;
  out.top = std::move(top);
  out.n = n;
  out.tail = std::max(0.0, (1.0 - sum) / static_cast<double>(n - k));
  return out;
}

double lowrank_entropy(const LowRankSpectrum& spectrum, double alpha) {
  check_alpha(alpha);
  if (is_shannon(alpha)) {
    double h = 0.0;
    for (Index i = 0; i < spectrum.k(); ++i) h += shannon_term(spectrum.top(i));
    return h + tail_shannon(spectrum);
  }
  return std::log2(information_potential(spectrum, alpha)) / (1.0 - alpha);
}

double spectrum_entropy(const Vector& eigenvalues, double alpha) {
  check_alpha(alpha);
  if (is_shannon(alpha)) {
    double h = 0.0;
    for (Index i = 0; i < eigenvalues.size(); ++i) h += shannon_term(eigenvalues(i));
    return h;
  }
  return std::log2(information_potential(eigenvalues, alpha)) / (1.0 - alpha);
}

double information_potential(const LowRankSpectrum& spectrum, double alpha) {
  check_alpha(alpha);
  if (alpha == 1.0) throw InvalidArgument("information potential is undefined at alpha = 1");
  double ip = 0.0;
  for (Index i = 0; i < spectrum.k(); ++i) ip += power_term(spectrum.top(i), alpha);
  return ip + tail_power(spectrum, alpha);
}

double information_potential(const Vector& eigenvalues, double alpha) {
  check_alpha(alpha);
  if (alpha == 1.0) throw InvalidArgument("information potential is undefined at alpha = 1");
  double ip = 0.0;
  for (Index i = 0; i < eigenvalues.size(); ++i) ip += power_term(eigenvalues(i), alpha);
  return ip;
}

Vector eigenvalues_descending(const KernelMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() == Eigen::Success) return solver.eigenvalues().reverse();
  // The QL sweep can stall on heavily repeated spectra. A kernel is PSD, so
  // its singular values are its eigenvalues up to rounding.
  Eigen::BDCSVD<Matrix> svd(a.matrix());
  if (svd.info() != Eigen::Success) throw NumericalError("dense symmetric eigensolver did not converge");
  return svd.singularValues();
}

LowRankSpectrum lowrank_from_eigenvalues(const Vector& eigenvalues, Index k) {
  const Index n = eigenvalues.size();
  if (k < 1 || k > n - 1) throw InvalidArgument("rank k must lie in [1, n-1]");
  LowRankSpectrum out = tail_complete(eigenvalues.head(k), n);
  // Same value as (1 - sum top) / (n - k) on a trace-one matrix, without the
  // cancellation when the tail is tiny.
  out.tail = std::max(0.0, eigenvalues.tail(n - k).sum()) / static_cast<double>(n - k);
  return out;
}

LowRankSpectrum exact_spectrum(const KernelMatrix& a, Index k) {
  return lowrank_from_eigenvalues(eigenvalues_descending(a), k);
}

double full_entropy(const KernelMatrix& a, double alpha) {
  check_alpha(alpha);
  return spectrum_entropy(eigenvalues_descending(a), alpha);
}

}  // namespace lrr
