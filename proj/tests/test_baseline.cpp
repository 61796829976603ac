// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <chrono>
#include <vector>

#include "oht/baseline.hpp"
#include "oht/errors.hpp"
#include "oht/simgen.hpp"
#include "test_helpers.hpp"

using oht::Algorithm;
using oht::KernelSpec;

TEST_CASE("binomial") {
  CHECK(oht::binomial(5, 0) == 1);
  CHECK(oht::binomial(5, 2) == 10);
  CHECK(oht::binomial(20, 5) == 15504);
  CHECK(oht::binomial(3, 4) == 0);
  CHECK(oht::binomial(60, 30) == 118264581564861424ULL);
}

TEST_CASE("closed-form counts") {
  CHECK(oht::count_mmd_evals(10, 2, 1, Algorithm::known).estimator_calls == 10 + 2 * 10 + 8);
  CHECK(oht::count_mmd_evals(10, 2, 0, Algorithm::known).estimator_calls == 20);
  CHECK(oht::count_mmd_evals(10, 2, 0, Algorithm::unknown).estimator_calls == 45);
  CHECK(oht::count_mmd_evals(10, 2, 0, Algorithm::exhaustive).estimator_calls == 360);
  CHECK(oht::count_mmd_evals(20, 5, 0, Algorithm::exhaustive).estimator_calls == 232560);

  const auto k = oht::count_mmd_evals(10, 2, 0, Algorithm::known, 4);
  CHECK(k.ranking_calls == 20);
  CHECK(k.kernel_evals == 20 * (12 + 12 + 16));
  const auto e = oht::count_mmd_evals(5, 1, 0, Algorithm::exhaustive, 3);
  // pool of 3 rows: 9 samples.
  CHECK(e.kernel_evals == 20 * (6 + 72 + 27));
}

TEST_CASE("exhaustive to low-complexity ratio grows with M") {
  double last = 0.0;
  for (std::size_t m = 8; m <= 20; ++m) {
    const double ex = static_cast<double>(oht::count_mmd_evals(m, 3, 0, Algorithm::exhaustive).estimator_calls);
    const double kn = static_cast<double>(oht::count_mmd_evals(m, 3, 10, Algorithm::known).estimator_calls);
    CHECK(ex / kn > last);
    last = ex / kn;
  }
}

TEST_CASE("algorithm tags") {
  CHECK(oht::parse_algorithm("alg1") == Algorithm::known);
  CHECK(oht::parse_algorithm("known") == Algorithm::known);
  CHECK(oht::parse_algorithm("alg2") == Algorithm::unknown);
  CHECK(oht::parse_algorithm("exhaustive") == Algorithm::exhaustive);
  CHECK_THROWS_AS(oht::parse_algorithm("alg3"), oht::ConfigError);
  CHECK(oht::algorithm_name(Algorithm::unknown) == "unknown");
  CHECK_THROWS_AS(oht::count_mmd_evals(2, 1, 0, Algorithm::known), oht::ConfigError);
}

TEST_CASE("exhaustive test on separated instances") {
  const auto k = KernelSpec::gaussian(1.0);
  const auto r = oht::exhaustive_known(test_helpers::planted_constant(5, {4}, 1.0, 10), 1, k);
  CHECK(r.hypothesis.indices() == std::vector<std::size_t>{4});
  CHECK(r.count.estimator_calls == 20);
  CHECK(r.best_score == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  // Every candidate scores 0; lexicographic tie-break picks the first.
  const auto z = oht::exhaustive_known(test_helpers::planted_constant(5, {}, 1.0, 4), 1, k);
  CHECK(z.hypothesis.indices() == std::vector<std::size_t>{0});

  const auto two = oht::exhaustive_known(test_helpers::planted_constant(7, {1, 5}, 2.0, 6), 2, k);
  CHECK(two.hypothesis.indices() == std::vector<std::size_t>{1, 5});
  CHECK(two.count.estimator_calls == oht::binomial(7, 2) * 5);

  CHECK_THROWS_AS(oht::exhaustive_known(test_helpers::planted_constant(5, {}, 1.0, 4), 3, k),
                  oht::ConfigError);
}
