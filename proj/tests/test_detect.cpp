// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "oht/baseline.hpp"
#include "oht/detect.hpp"
#include "oht/errors.hpp"
#include "oht/simgen.hpp"
#include "test_helpers.hpp"

using oht::Hypothesis;
using oht::KernelSpec;
using test_helpers::planted_constant;

namespace {
const KernelSpec kUnit = KernelSpec::gaussian(1.0);
}

TEST_CASE("hypothesis construction") {
  CHECK(Hypothesis::reject().is_reject());
  const auto h = Hypothesis::outliers({4, 1});
  CHECK_FALSE(h.is_reject());
  CHECK(h.indices() == std::vector<std::size_t>{1, 4});
  CHECK_THROWS_AS(Hypothesis::outliers({}), oht::PreconditionError);
  CHECK_THROWS_AS(Hypothesis::outliers({2, 2}), oht::PreconditionError);
  CHECK(oht::max_outliers(3) == 1);
  CHECK(oht::max_outliers(4) == 1);
  CHECK(oht::max_outliers(5) == 2);
  CHECK(oht::max_outliers(10) == 4);
}

TEST_CASE("known test on separated constant rows") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto one = oht::test_known(planted_constant(5, {4}, 1.0, 10), {1, 10, seed}, kUnit);
    CHECK(one.hypothesis.indices() == std::vector<std::size_t>{4});
    const auto two = oht::test_known(planted_constant(6, {4, 5}, 1.0, 10), {2, 10, seed}, kUnit);
    CHECK(two.hypothesis.indices() == std::vector<std::size_t>{4, 5});
    CHECK(two.trace.iterations == 1);  // the second ranking repeats the first
  }
}

TEST_CASE("single-pass and iterated variants agree on easy instances") {
  const auto seqs = planted_constant(6, {4, 5}, 1.0, 10);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto single = oht::test_known(seqs, {2, 0, seed}, kUnit);
    const auto many = oht::test_known(seqs, {2, 5, seed}, kUnit);
    CHECK(single.hypothesis == many.hypothesis);
    CHECK(single.trace.iterations == 0);
    CHECK(single.trace.pooled_evals == 0);
  }
}

TEST_CASE("known test trace structure") {
  const auto r = oht::test_known(planted_constant(8, {1, 6}, 3.0, 5), {2, 10, 11}, kUnit);
  const auto& t = r.trace;
  CHECK(t.reference_history.size() == t.iterations + 2);
  CHECK(t.candidate_sets.size() == t.iterations + 1);
  CHECK(t.candidate_sets.back() == r.hypothesis.indices());
  // Step-3 reference is nominal.
  CHECK(t.reference_history[1] != 1);
  CHECK(t.reference_history[1] != 6);
}

TEST_CASE("unknown test decisions on constant rows") {
  const auto all_zero = planted_constant(6, {}, 1.0, 10);
  const auto rej = oht::test_unknown(all_zero, {0.1, 3}, kUnit);
  CHECK(rej.hypothesis.is_reject());
  CHECK(rej.trace.reference_history.empty());
  CHECK(rej.trace.max_pairwise == 0.0);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = oht::test_unknown(planted_constant(6, {4, 5}, 1.0, 10), {0.5, seed}, kUnit);
    CHECK(r.hypothesis.indices() == std::vector<std::size_t>{4, 5});
    CHECK(r.trace.mmd_evals == 15);
    CHECK_FALSE(r.trace.cluster_tie);
  }
}

TEST_CASE("unknown test tie goes to the farthest-point cluster") {
  const auto seqs = planted_constant(4, {2, 3}, 1.0, 6);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = oht::test_unknown(seqs, {0.5, seed}, kUnit);
    REQUIRE(r.trace.reference_history.size() == 2);
    CHECK(r.trace.cluster_tie);
    const std::size_t c2 = r.trace.reference_history[1];
    const auto& idx = r.hypothesis.indices();
    CHECK(idx.size() == 2);
    CHECK(std::find(idx.begin(), idx.end(), c2) != idx.end());
    CHECK(r.hypothesis.indices() == r.trace.candidate_sets[1]);
  }
}

TEST_CASE("deterministic given the seed") {
  oht::ScenarioSpec spec;
  spec.count = 9;
  spec.length = 12;
  spec.outlier_set = {2, 7};
  spec.seed = 5;
  const auto seqs = oht::generate(spec);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = oht::test_known(seqs, {2, 10, seed}, kUnit);
    const auto b = oht::test_known(seqs, {2, 10, seed}, kUnit);
    CHECK(a.hypothesis == b.hypothesis);
    CHECK(a.trace == b.trace);
    const auto c = oht::test_unknown(seqs, {0.1, seed}, kUnit);
    const auto d = oht::test_unknown(seqs, {0.1, seed}, kUnit);
    CHECK(c.hypothesis == d.hypothesis);
    CHECK(c.trace == d.trace);
  }
}

TEST_CASE("cache and matrix overloads agree with the sequence overloads") {
  oht::ScenarioSpec spec;
  spec.count = 10;
  spec.length = 15;
  spec.outlier_set = {0, 3, 8};
  spec.seed = 41;
  const auto seqs = oht::generate(spec);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    oht::KernelSumCache cache(seqs, kUnit);
    const auto a = oht::test_known(seqs, {3, 10, seed}, kUnit);
    const auto b = oht::test_known(cache, {3, 10, seed});
    CHECK(a.trace == b.trace);
    const auto m = oht::mmd2_matrix(seqs, kUnit);
    CHECK(oht::test_unknown(m, {0.2, seed}).trace == oht::test_unknown(seqs, {0.2, seed}, kUnit).trace);
  }
}

TEST_CASE("estimator-call counts follow the closed form") {
  for (std::size_t m = 5; m <= 14; ++m) {
    for (std::size_t s = 1; s <= oht::max_outliers(m) && s <= 3; ++s) {
      oht::ScenarioSpec spec;
      spec.count = m;
      spec.length = 8;
      spec.outlier_set = oht::leading_outliers(s);
      spec.anomalous = {0.3, 1.0};  // weak signal: several rounds happen
      spec.seed = m * 31 + s;
      const auto seqs = oht::generate(spec);
      for (std::size_t iters : {0, 1, 3, 10}) {
        const auto r = oht::test_known(seqs, {s, iters, spec.seed}, kUnit);
        CHECK(r.trace.iterations <= iters);
        const auto expect =
            oht::count_mmd_evals(m, s, r.trace.iterations, oht::Algorithm::known);
        CHECK(r.trace.mmd_evals == expect.estimator_calls);
        CHECK(r.trace.ranking_evals == expect.ranking_calls);
        CHECK(r.trace.pooled_evals == expect.pooled_calls);
      }
      const auto u = oht::test_unknown(seqs, {0.05, spec.seed}, kUnit);
      CHECK(u.trace.mmd_evals == oht::count_mmd_evals(m, s, 0, oht::Algorithm::unknown).estimator_calls);
    }
  }
}

TEST_CASE("unknown test rejects exactly when the maximum is below lambda") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    oht::ScenarioSpec spec;
    spec.count = 7;
    spec.length = 10;
    spec.seed = seed;
    const auto m = oht::mmd2_matrix(oht::generate(spec), kUnit);
    const double top = m.max_off_diagonal();
    for (double lambda : {0.5 * top, top, 1.5 * top}) {
      if (!(lambda > 0.0)) continue;
      const auto r = oht::test_unknown(m, {lambda, seed});
      CHECK(r.hypothesis.is_reject() == (top < lambda));
      if (!r.hypothesis.is_reject()) {
        CHECK(r.hypothesis.indices().size() <= 3);
        CHECK(r.trace.candidate_sets[0].size() + r.trace.candidate_sets[1].size() == 7);
      }
    }
  }
}

TEST_CASE("configuration errors") {
  const auto seqs = planted_constant(6, {4, 5}, 1.0, 10);
  CHECK_THROWS_AS(oht::test_known(seqs, {0, 10, 0}, kUnit), oht::ConfigError);
  CHECK_THROWS_AS(oht::test_known(seqs, {3, 10, 0}, kUnit), oht::ConfigError);
  CHECK_THROWS_AS(oht::test_unknown(seqs, {0.0, 0}, kUnit), oht::ConfigError);
  CHECK_THROWS_AS(oht::test_unknown(seqs, {-1.0, 0}, kUnit), oht::ConfigError);
}
