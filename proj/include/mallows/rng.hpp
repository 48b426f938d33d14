#pragma once

#include <cstdint>
#include <random>

namespace mallows {

// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Master seed plus the rule that turns a stream index into an engine seed.
///
/// stream(k) = mix64(mix64(master_seed) ^ mix64(k + 1)) seeds a std::mt19937_64.
/// Both pieces are fully specified by the standard library and this header,
/// so every (master_seed, k) pair gives the same byte stream on any platform.
struct SeedSpec {
  std::uint64_t master_seed = 0;

  std::uint64_t stream_seed(std::uint64_t k) const {
    return mix64(mix64(master_seed) ^ mix64(k + 1));
  }
};

using Engine = std::mt19937_64;

inline Engine make_engine(const SeedSpec& seed, std::uint64_t stream) {
  return Engine(seed.stream_seed(stream));
}

// Uniform double in [0,1) from the top 53 bits of one engine draw.
// std::uniform_real_distribution is not bit-portable across standard libraries.
template <class URBG>
double uniform01(URBG& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace mallows
