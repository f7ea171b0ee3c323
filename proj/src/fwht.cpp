#include "lrr/fwht.hpp"

#include <bit>

#include "lrr/error.hpp"

namespace lrr {

std::size_t next_pow2(std::size_t n) { return std::bit_ceil(n == 0 ? std::size_t{1} : n); }

void fwht(std::span<double> x) {
  const std::size_t len = x.size();
  if (!std::has_single_bit(len)) throw InvalidArgument("fwht length must be a power of two");
  for (std::size_t h = 1; h < len; h *= 2) {
    for (std::size_t i = 0; i < len; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = x[j];
        const double b = x[j + h];
        x[j] = a + b;
        x[j + h] = a - b;
      }
    }
  }
}

}  // namespace lrr
