#pragma once

#include <cstdint>
#include <random>

namespace cellsim {

// SplitMix64 finalizer; used to derive well-spread substream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic seed for substream (tag, index) of a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                    std::uint64_t index = 0) noexcept {
  return mix64(mix64(mix64(master) + tag) + index);
}

// Substream tags.
inline constexpr std::uint64_t kStreamTrial = 0x71;
inline constexpr std::uint64_t kStreamBootstrap = 0xB0;
inline constexpr std::uint64_t kStreamSweepPoint = 0x53;
inline constexpr std::uint64_t kStreamValidate = 0xA1;

// Deterministic random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; all variate transforms are implemented
// here rather than with std:: distributions, whose streams vary between
// standard library implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; generates pairs, caches the second.
  double normal();

  // Gamma(shape, scale 1) by Marsaglia-Tsang squeeze; shape > 0.
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace cellsim
