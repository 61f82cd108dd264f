#pragma once

// Fully specified generators so that results are reproducible across platforms
// and languages. None of this is cryptographic-strength.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace qlink::rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer (a bijection on 64-bit words).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Independent substream for (seed, stream tag, block index).
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t block) {
  return mix64(mix64(seed ^ tag) ^ block);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Box-Muller pair of independent standard normals.
  std::pair<double, double> normal_pair() {
    const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  bool bit() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace qlink::rng
