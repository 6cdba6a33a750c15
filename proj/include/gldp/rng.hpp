#pragma once

#include <cmath>
#include <cstdint>

// Counter-based random numbers.  Every draw is a pure function of
// (seed, hi, lo), so parallel loops can generate the same stream in any
// order and a sample can be regenerated bit-for-bit from its key alone.

namespace gldp::rng {

// 64-bit finalizer (murmur3-style).  Bijective on uint64, good avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t hi,
                           std::uint64_t lo) noexcept {
  std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (hi + 0xbf58476d1ce4e5b9ULL));
  h = mix64(h ^ (lo + 0x94d049bb133111ebULL));
  return h;
}

// Uniform double in [0, 1), 53 mantissa bits.
constexpr double uniform01(std::uint64_t seed, std::uint64_t hi,
                           std::uint64_t lo) noexcept {
  return static_cast<double>(at(seed, hi, lo) >> 11) * 0x1.0p-53;
}

// Edge draw keyed on the unordered pair {i, j}.
inline double edge_uniform(std::uint64_t seed, int i, int j) noexcept {
  if (i > j) { const int t = i; i = j; j = t; }
  return uniform01(seed, static_cast<std::uint64_t>(i),
                   static_cast<std::uint64_t>(j));
}

// Derive an independent stream (per-sample seeds, tilted draws, restarts).
constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t tag,
                                  std::uint64_t k) noexcept {
  return at(seed, tag, k);
}

// Stream tags.
inline constexpr std::uint64_t kSampleStream = 0x73616d70ULL;  // graph samples
inline constexpr std::uint64_t kTiltStream = 0x74696c74ULL;    // tilted draws
inline constexpr std::uint64_t kOptStream = 0x6f707473ULL;     // solver restarts
inline constexpr std::uint64_t kProbeStream = 0x70726f62ULL;   // spectral probes

// Standard normal via Box-Muller on two counter draws.
inline double normal(std::uint64_t seed, std::uint64_t hi,
                     std::uint64_t lo) noexcept {
  const double u1 = uniform01(seed, hi, lo);
  const double u2 = uniform01(seed, hi ^ 0x5555555555555555ULL, lo);
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  return r * std::cos(6.283185307179586476925287 * u2);
}

}  // namespace gldp::rng
