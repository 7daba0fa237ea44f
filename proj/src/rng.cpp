#include "peernet/rng.hpp"

#include <cmath>

namespace peernet {

namespace {

// SplitMix64 finalizer (Steele, Lea & Flood 2014).
std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ ((stream + 1) * 0x9E3779B97F4A7C15ULL));
}

double Rng::uniform01() {
  // Top 53 bits, shifted into (0, 1] so log() is always defined.
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double Rng::gaussian(double mean, double stddev) {
  if (stddev == 0.0) {
    return mean;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  return mean + stddev * radius * std::cos(angle);
}

}  // namespace peernet
