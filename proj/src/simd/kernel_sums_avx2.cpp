// SPDX-License-Identifier: Apache-2.0
// AVX2 variants of the Gaussian kernel sums. This translation unit is the only
// one compiled with -mavx2 -mfma; callers reach it through the dispatcher after a
// CPU feature check.

#include <immintrin.h>

#include <array>
#include <cstddef>
#include <cstdint>

#include "oht/simd/kernel_sums.hpp"

namespace oht::simd::avx2 {

namespace {

// Cephes exp: x = k ln2 + r with |r| <= ln2/2 after a two-part reduction,
// exp(r) from the (3,3) Pade form 1 + 2 r P(r^2) / (Q(r^2) - r P(r^2)), then
// scaled by 2^k through the exponent bits. exp(0) is exactly 1. Arguments
// below the double range flush to 0 like std::exp's underflow.
constexpr double kLog2e = 1.4426950408889634073599;
constexpr double kLn2Hi = 6.93145751953125E-1;
constexpr double kLn2Lo = 1.42860682030941723212E-6;
constexpr double kMinLog = -7.08396418532264106224E2;
constexpr double kMaxLog = 7.09E2;

constexpr double kP0 = 1.26177193074810590878E-4;
constexpr double kP1 = 3.02994407707441961300E-2;
constexpr double kP2 = 9.99999999999999999910E-1;
constexpr double kQ0 = 3.00198505138664455042E-6;
constexpr double kQ1 = 2.52448340349684104192E-3;
constexpr double kQ2 = 2.27265548208155028766E-1;
constexpr double kQ3 = 2.00000000000000000009E0;

inline __m256d exp_pd(__m256d x) {
  const __m256d underflow = _mm256_cmp_pd(x, _mm256_set1_pd(kMinLog), _CMP_LT_OQ);
  x = _mm256_max_pd(x, _mm256_set1_pd(kMinLog));
  x = _mm256_min_pd(x, _mm256_set1_pd(kMaxLog));

  const __m256d fx = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kLog2e)),
                                     _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  x = _mm256_fnmadd_pd(fx, _mm256_set1_pd(kLn2Hi), x);
  x = _mm256_fnmadd_pd(fx, _mm256_set1_pd(kLn2Lo), x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d px = _mm256_fmadd_pd(_mm256_set1_pd(kP0), xx, _mm256_set1_pd(kP1));
  px = _mm256_fmadd_pd(px, xx, _mm256_set1_pd(kP2));
  px = _mm256_mul_pd(px, x);

  __m256d qx = _mm256_fmadd_pd(_mm256_set1_pd(kQ0), xx, _mm256_set1_pd(kQ1));
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(kQ2));
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(kQ3));

  __m256d r = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  r = _mm256_add_pd(_mm256_set1_pd(1.0), _mm256_add_pd(r, r));

  __m256i n64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(fx));
  n64 = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  r = _mm256_mul_pd(r, _mm256_castsi256_pd(n64));

  return _mm256_andnot_pd(underflow, r);
}

struct KahanLanes {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  void add(__m256d v) {
    const __m256d y = _mm256_sub_pd(v, comp);
    const __m256d t = _mm256_add_pd(sum, y);
    comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
    sum = t;
  }
};

// Four interleaved accumulators hide the latency of the compensation chain.
struct Accumulator {
  std::array<KahanLanes, 4> lanes;

  // Folded in a fixed order so the result is reproducible.
  double reduce() const {
    double total = 0.0;
    double err = 0.0;
    auto add = [&](double v) {
      const double y = v - err;
      const double t = total + y;
      err = (t - total) - y;
      total = t;
    };
    alignas(32) std::array<double, 4> buf{};
    for (const auto& l : lanes) {
      _mm256_store_pd(buf.data(), l.sum);
      for (double v : buf) add(v);
    }
    for (const auto& l : lanes) {
      _mm256_store_pd(buf.data(), l.comp);
      for (double v : buf) add(-v);
    }
    return total;
  }
};

inline __m256d gaussian4(__m256d xi, __m256d yj, __m256d neg_gamma) {
  const __m256d d = _mm256_sub_pd(xi, yj);
  return exp_pd(_mm256_mul_pd(neg_gamma, _mm256_mul_pd(d, d)));
}

// Accumulates exp(-gamma (xi - y_j)^2) over y[0, count) into acc.
inline void accumulate_row(double xi, const double* y, std::size_t count, __m256d neg_gamma,
                           Accumulator& acc) {
  const __m256d vxi = _mm256_set1_pd(xi);
  std::size_t j = 0;
  for (; j + 16 <= count; j += 16) {
    acc.lanes[0].add(gaussian4(vxi, _mm256_loadu_pd(y + j), neg_gamma));
    acc.lanes[1].add(gaussian4(vxi, _mm256_loadu_pd(y + j + 4), neg_gamma));
    acc.lanes[2].add(gaussian4(vxi, _mm256_loadu_pd(y + j + 8), neg_gamma));
    acc.lanes[3].add(gaussian4(vxi, _mm256_loadu_pd(y + j + 12), neg_gamma));
  }
  std::size_t slot = 0;
  for (; j + 4 <= count; j += 4, ++slot) {
    acc.lanes[slot].add(gaussian4(vxi, _mm256_loadu_pd(y + j), neg_gamma));
  }
  if (j < count) {
    const auto rem = static_cast<long long>(count - j);
    const __m256i lane = _mm256_set_epi64x(3, 2, 1, 0);
    const __m256i mask = _mm256_cmpgt_epi64(_mm256_set1_epi64x(rem), lane);
    const __m256d tail = _mm256_maskload_pd(y + j, mask);
    const __m256d k = gaussian4(vxi, tail, neg_gamma);
    acc.lanes[slot].add(_mm256_and_pd(k, _mm256_castsi256_pd(mask)));
  }
}

}  // namespace

double gaussian_pair_sum(std::span<const double> x, double gamma) {
  const __m256d neg_gamma = _mm256_set1_pd(-gamma);
  Accumulator acc;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    accumulate_row(x[i], x.data() + i + 1, n - i - 1, neg_gamma, acc);
  }
  return acc.reduce();
}

double gaussian_cross_sum(std::span<const double> x, std::span<const double> y, double gamma) {
  const __m256d neg_gamma = _mm256_set1_pd(-gamma);
  Accumulator acc;
  for (const double xi : x) {
    accumulate_row(xi, y.data(), y.size(), neg_gamma, acc);
  }
  return acc.reduce();
}

void exp4(const double* in, double* out) { _mm256_storeu_pd(out, exp_pd(_mm256_loadu_pd(in))); }

}  // namespace oht::simd::avx2
