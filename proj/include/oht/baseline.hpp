// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exhaustive-search reference test and closed-form estimator-call counts.
//
// The exhaustive test is not a reproduction of any published exhaustive MMD
// test: it scores every candidate outlier set B of size s by the total
// inhomogeneity of the remaining sequences,
//   score(B) = sum over j not in B of MMD^2(y_j, pool of the others not in B),
// and returns the minimizer (ties: lexicographically smallest B). It exists to
// cross-check the low-complexity tests on easy instances and to measure the
// cost of enumerating C(M, s) subsets. Each candidate set is scored
// independently, as a per-hypothesis statistic would be.

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "oht/detect.hpp"
#include "oht/kernel.hpp"
#include "oht/mmd.hpp"

namespace oht {

enum class Algorithm { known, unknown, exhaustive };

std::string_view algorithm_name(Algorithm algorithm);

/// Parses "known" / "alg1", "unknown" / "alg2", "exhaustive". Throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view tag);

struct EvalCount {
  Algorithm algorithm = Algorithm::known;
  std::uint64_t estimator_calls = 0;  ///< ranking_calls + pooled_calls
  std::uint64_t ranking_calls = 0;    ///< sequence-vs-sequence statistics
  std::uint64_t pooled_calls = 0;     ///< sequence-vs-pool statistics
  /// Kernel terms in the estimator expansion, n1(n1-1) + n2(n2-1) + n1 n2 per
  /// call; zero when no sample length was supplied.
  std::uint64_t kernel_evals = 0;

  bool operator==(const EvalCount&) const = default;
};

/// n choose k, exact in 64 bits for the sizes used here.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Closed-form counts for M sequences, s outliers and `rounds` re-estimations.
///   known:      ranking M + (rounds + 1) M, pooled rounds (M - s)
///   unknown:    ranking M (M - 1) / 2
///   exhaustive: pooled C(M, s) (M - s)
/// `length` (n) only feeds kernel_evals.
EvalCount count_mmd_evals(std::size_t count, std::size_t s, std::size_t rounds, Algorithm algorithm,
                          std::size_t length = 0);

struct ExhaustiveResult {
  Hypothesis hypothesis;
  EvalCount count;
  double best_score = 0.0;
};

ExhaustiveResult exhaustive_known(const SequenceSet& seqs, std::size_t s, const KernelSpec& kernel);

}  // namespace oht
