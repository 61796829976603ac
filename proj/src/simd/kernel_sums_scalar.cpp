// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstddef>

#include "oht/simd/kernel_sums.hpp"

namespace oht::simd::scalar {

namespace {

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

double gaussian_pair_sum(std::span<const double> x, double gamma) {
  const double neg_gamma = -gamma;
  KahanSum acc;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = xi - x[j];
      acc.add(std::exp(neg_gamma * (d * d)));
    }
  }
  return acc.sum;
}

double gaussian_cross_sum(std::span<const double> x, std::span<const double> y, double gamma) {
  const double neg_gamma = -gamma;
  KahanSum acc;
  for (const double xi : x) {
    for (const double yj : y) {
      const double d = xi - yj;
      acc.add(std::exp(neg_gamma * (d * d)));
    }
  }
  return acc.sum;
}

}  // namespace oht::simd::scalar
