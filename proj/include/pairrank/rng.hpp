#pragma once

#include <cstdint>
#include <random>

namespace pairrank {

// splitmix64: bijective 64-bit mixer with full avalanche. Used only to
// derive seeds, never as the sampling engine itself.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// A splittable seed key. child(i) derives a statistically independent
// stream key; engine() materializes a mt19937_64 for sequential draws.
// Splitting depends only on the key, so derived streams are stable no
// matter how many draws the parent performed — this is what makes
// per-trial and per-edge parallelism reproducible.
class SeedSequence {
 public:
  explicit SeedSequence(std::uint64_t key) : key_(key) {}

  SeedSequence child(std::uint64_t index) const {
    return SeedSequence(splitmix64(splitmix64(key_) ^ (index + 0x9E3779B97F4A7C15ULL)));
  }

  std::mt19937_64 engine() const { return std::mt19937_64(splitmix64(key_)); }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

// Uniform double in [0, 1) from the top 53 bits. The mt19937_64 engine is
// fully specified by the standard, so this is bit-reproducible across
// platforms (std::uniform_real_distribution is not).
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& gen, double p) {
  return uniform01(gen) < p;
}

}  // namespace pairrank
