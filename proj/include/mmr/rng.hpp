#pragma once

#include <cstdint>
#include <random>

namespace mmr {

/// Seeded generator with a portable double mapping: mt19937_64 output x is
/// mapped to (x >> 11) * 2^-53, so sampled values match across standard
/// libraries.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/53bit";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Seed for sub-task `index` of a run seeded with `seed` (splitmix64 mix), so
/// parallel work gets streams independent of scheduling order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace mmr
