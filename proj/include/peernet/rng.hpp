#pragma once

#include <cstdint>
#include <random>

namespace peernet {

/// Deterministic random source used everywhere randomness is needed.
///
/// Composition, all of it pinned so identical seeds reproduce identical
/// streams on any conforming platform:
///  - engine: std::mt19937_64 (fully specified by the standard);
///  - uniforms: top 53 bits of the engine output mapped to (0, 1];
///  - gaussians: Box-Muller transform, two uniforms per draw, no caching;
///  - substreams: seeds derived with the SplitMix64 finalizer, so every
///    realization/community owns an independent stream regardless of
///    scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream number `stream` under the run-level `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix_seed(seed, stream));
  }

  /// SplitMix64 finalizer applied to seed XOR (stream+1)*golden-gamma.
  static std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

  /// Uniform on (0, 1], 53-bit resolution. Never returns 0, so it is safe
  /// to take its logarithm.
  double uniform01();

  /// Uniform on (lo, hi].
  double uniform(double lo, double hi);

  bool bernoulli(double p) { return uniform01() <= p; }

  /// Gaussian with the given mean and standard deviation. stddev == 0
  /// returns the mean exactly and consumes no engine output.
  double gaussian(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
};

}  // namespace peernet
