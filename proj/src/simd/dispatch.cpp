// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <string>

#include "oht/errors.hpp"
#include "oht/simd/kernel_sums.hpp"

namespace oht::simd {

namespace {

bool cpu_has_avx2() {
#if defined(OHT_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect_best() { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect_best()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
  }
  return false;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw ConfigError("SIMD variant not available on this build/CPU: " + std::string(isa_name(isa)));
  }
  active().store(isa, std::memory_order_relaxed);
}

double gaussian_pair_sum(std::span<const double> x, double gamma) {
#if defined(OHT_WITH_AVX2)
  if (active_isa() == Isa::avx2) return avx2::gaussian_pair_sum(x, gamma);
#endif
  return scalar::gaussian_pair_sum(x, gamma);
}

double gaussian_cross_sum(std::span<const double> x, std::span<const double> y, double gamma) {
#if defined(OHT_WITH_AVX2)
  if (active_isa() == Isa::avx2) return avx2::gaussian_cross_sum(x, y, gamma);
#endif
  return scalar::gaussian_cross_sum(x, y, gamma);
}

}  // namespace oht::simd
