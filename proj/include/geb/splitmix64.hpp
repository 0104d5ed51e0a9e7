#pragma once

#include <cstdint>

namespace geb {

// splitmix64 generator (Vigna's fixed-increment SplittableRandom variant).
// Every random decision in this library flows through this generator so that
// databases, measurements, and experiment outputs are bit-identical across
// platforms and implementations.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// First output of a stream seeded with `x`. Used to derive independent
// sub-seeds (per partition, per repetition) from a master seed.
constexpr std::uint64_t mix64(std::uint64_t x) { return SplitMix64(x).next(); }

// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Unbiased uniform integer in [0, bound), bound >= 1, by rejection sampling.
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = rng.next();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace geb
