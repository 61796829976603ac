// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace oht {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent stream key from a seed and a path of integer labels,
/// e.g. derive_key(seed, {trial, row}). Distinct paths give unrelated keys.
std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

/// xoshiro256** seeded from a 64-bit key via SplitMix64. Satisfies
/// UniformRandomBitGenerator. Normal variates use the Box-Muller
/// transform: u1 in (0, 1], u2 in [0, 1) from the top 53 bits,
/// z0 = sqrt(-2 ln u1) cos(2 pi u2), z1 = sqrt(-2 ln u1) sin(2 pi u2),
/// returned in that order.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound), bound > 0, by rejection (no modulo bias).
  std::size_t uniform_index(std::size_t bound);

  double normal(double mu, double sigma);

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace oht
