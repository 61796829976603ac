// SPDX-License-Identifier: Apache-2.0
#include "oht/random.hpp"

#include <cmath>
#include <numbers>

#include "oht/errors.hpp"

namespace oht {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = mix64(seed + kGolden);
  for (const std::uint64_t label : path) key = mix64(key ^ mix64(label + kGolden));
  return key;
}

Rng::Rng(std::uint64_t key) {
  std::uint64_t x = key;
  for (auto& word : s_) {
    x += kGolden;
    word = mix64(x);
  }
}

Rng::result_type Rng::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

std::size_t Rng::uniform_index(std::size_t bound) {
  if (bound == 0) throw PreconditionError("uniform_index: bound must be positive");
  const std::uint64_t b = bound;
  const std::uint64_t limit = max() - max() % b;  // accept [0, limit)
  std::uint64_t r;
  do {
    r = (*this)();
  } while (r >= limit);
  return static_cast<std::size_t>(r % b);
}

double Rng::normal(double mu, double sigma) {
  if (has_spare_) {
    has_spare_ = false;
    return mu + sigma * spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return mu + sigma * (radius * std::cos(angle));
}

}  // namespace oht
