#pragma once

#include <initializer_list>
#include <span>

namespace lrr {

/// Plug-in Shannon estimators (bits) over empirical joint frequencies of
/// discrete variables. All vectors must have equal length; symbols are
/// arbitrary integers.
double plugin_entropy(std::initializer_list<std::span<const int>> variables);
double plugin_mi(std::span<const int> u, std::span<const int> v);
/// I(U; V | W).
double plugin_cmi(std::span<const int> u, std::span<const int> v, std::span<const int> w);

}  // namespace lrr
