#pragma once

#include <cstdint>
#include <random>

namespace uqr {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based seed splitting: every (root, stream, index) triple gets its own
/// independent seed, so work can be distributed without sharing an engine.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream,
                                    std::uint64_t index = 0) noexcept {
  return splitmix64(splitmix64(splitmix64(root) ^ stream) + index);
}

using Engine = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Streams used across the library. Keep values stable: they are part of the
// reproducibility contract of stored configs.
namespace stream {
inline constexpr std::uint64_t kSampleUniform = 1;
inline constexpr std::uint64_t kResample = 2;
inline constexpr std::uint64_t kPullbackForm = 3;
inline constexpr std::uint64_t kSeedPoints = 4;
inline constexpr std::uint64_t kTargetPerturb = 5;
inline constexpr std::uint64_t kQuadrature = 6;
}  // namespace stream

}  // namespace uqr
