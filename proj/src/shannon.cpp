#include "lrr/shannon.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lrr/error.hpp"

namespace lrr {

double plugin_entropy(std::initializer_list<std::span<const int>> variables) {
  if (variables.size() == 0) throw InvalidArgument("plugin_entropy needs at least one variable");
  const std::size_t n = variables.begin()->size();
  if (n == 0) throw InvalidArgument("plugin_entropy: empty sample");
  for (const auto& v : variables)
    if (v.size() != n) throw InvalidArgument("plugin_entropy: variables differ in length");

  // Sort sample indices lexicographically by their joint symbol, then count runs.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  const auto less = [&](std::size_t a, std::size_t b) {
    for (const auto& v : variables)
      if (v[a] != v[b]) return v[a] < v[b];
    return false;
  };
  std::sort(order.begin(), order.end(), less);

  double h = 0.0;
  const double total = static_cast<double>(n);
  std::size_t run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && !less(order[i - 1], order[i])) {
      ++run;
      continue;
    }
    const double p = static_cast<double>(run) / total;
    h -= p * std::log2(p);
    run = 1;
  }
  return h;
}

double plugin_mi(std::span<const int> u, std::span<const int> v) {
  return plugin_entropy({u}) + plugin_entropy({v}) - plugin_entropy({u, v});
}

double plugin_cmi(std::span<const int> u, std::span<const int> v, std::span<const int> w) {
  return plugin_entropy({u, w}) + plugin_entropy({v, w}) - plugin_entropy({u, v, w}) - plugin_entropy({w});
}

}  // namespace lrr
