#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace lrr {

/// Counter-based Philox4x32-10 generator.
///
/// A generator is identified by a 64-bit key (the seed) and a 64-bit stream
/// id; the remaining 64 counter bits index the position inside the stream.
/// All variates are produced by code in this library (no std::*_distribution),
/// so sequences are identical across platforms and standard libraries.
class Rng {
 public:
  static constexpr std::string_view kName = "philox4x32-10";
  static constexpr int kVersion = 1;

  Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in (0, 1).
  double uniform_open();
  /// Standard normal (Box-Muller, both outputs used).
  double normal();
  /// Uniform integer in [0, bound), unbiased. bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Random sign, +1 or -1 with equal probability.
  double sign();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 finalizer; used to derive independent stream ids.
std::uint64_t mix64(std::uint64_t x);

/// Stream id for (tag, a, b); tags keep unrelated consumers of one seed apart.
std::uint64_t stream_id(std::string_view tag, std::uint64_t a = 0, std::uint64_t b = 0);

}  // namespace lrr
