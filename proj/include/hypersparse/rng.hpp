#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hypersparse {

/// Seeded generator with platform-independent output. The engine is the
/// standard-mandated mt19937_64; integer and real draws are derived from its
/// raw 64-bit output by hand because the std distributions are
/// implementation-defined.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  void discard(std::uint64_t count) { engine_.discard(count); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi], by rejection (no modulo bias).
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent substream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace hypersparse
