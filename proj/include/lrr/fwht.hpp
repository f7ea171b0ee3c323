#pragma once

#include <cstddef>
#include <span>

namespace lrr {

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

/// In-place unnormalized fast Walsh-Hadamard transform in natural (Sylvester)
/// order: x <- H x with H_ij = (-1)^popcount(i & j). Applying it twice
/// multiplies x by x.size(). Throws InvalidArgument unless the length is a
/// power of two.
void fwht(std::span<double> x);

}  // namespace lrr
