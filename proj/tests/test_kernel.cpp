// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "oht/errors.hpp"
#include "oht/kernel.hpp"

using oht::KernelSpec;

TEST_CASE("gaussian kernel values") {
  const auto k = KernelSpec::gaussian(1.0);
  CHECK(oht::kernel_eval(k, 0.0, 0.0) == 1.0);
  // e^{-1/2}, 30-digit reference from arbitrary-precision exp.
  CHECK(oht::kernel_eval(k, 0.0, 1.0) == doctest::Approx(0.606530659712633423603799534991).epsilon(1e-15));
  CHECK(oht::kernel_eval(KernelSpec::gaussian(2.0), 0.0, 2.0) ==
        doctest::Approx(0.606530659712633423603799534991).epsilon(1e-15));
}

TEST_CASE("kernel symmetry, range and bound on random inputs") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> pos(-20.0, 20.0);
  std::uniform_real_distribution<double> bw(0.05, 10.0);
  for (int t = 0; t < 5000; ++t) {
    const auto k = KernelSpec::gaussian(bw(gen));
    const double a = pos(gen);
    const double b = pos(gen);
    const double v = oht::kernel_eval(k, a, b);
    CHECK(v == oht::kernel_eval(k, b, a));
    CHECK(v >= 0.0);
    CHECK(v <= oht::kernel_bound(k));
    CHECK(oht::kernel_eval(k, a, a) == oht::kernel_bound(k));
  }
}

TEST_CASE("kernel bound is bandwidth independent") {
  CHECK(oht::kernel_bound(KernelSpec::gaussian(1.0)) == 1.0);
  CHECK(oht::kernel_bound(KernelSpec::gaussian(7.3)) == 1.0);
}

TEST_CASE("invalid bandwidth is a configuration error") {
  CHECK_THROWS_AS(oht::kernel_eval(KernelSpec::gaussian(0.0), 0.0, 1.0), oht::ConfigError);
  CHECK_THROWS_AS(oht::kernel_eval(KernelSpec::gaussian(-1.0), 0.0, 1.0), oht::ConfigError);
  CHECK_THROWS_AS(oht::kernel_bound(KernelSpec::gaussian(std::nan(""))), oht::ConfigError);
}
