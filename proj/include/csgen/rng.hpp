/**
 * \file rng.hpp
 * \brief Portable seeded randomness (splitmix64).
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 *
 * std:: distributions are not specified bit-for-bit across platforms, so
 * everything that must reproduce from a seed uses this generator and the
 * derivation helpers below.
 */

#pragma once

#include <cstdint>

namespace csgen {

/// One splitmix64 scramble step.
constexpr std::uint64_t splitmix64_step(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from (seed, index), e.g. one stream
/// per simulation round.
constexpr std::uint64_t mix64(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64_step(seed ^ splitmix64_step(index + 0x632be59bd9b4e019ull));
}

/// Minimal splitmix64 generator. Identical output on every platform.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n), n >= 1, via rejection (no modulo bias).
  std::uint64_t below(std::uint64_t n) noexcept {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t x = next();
      if (x >= threshold) return x % n;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace csgen
