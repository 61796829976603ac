// SPDX-License-Identifier: Apache-2.0
#pragma once

// Low-complexity fixed-length outlier tests.
//
// test_known: the number s of outliers is given. A reference sequence is
// chosen as the median-ranked sequence relative to a random draw, the s
// sequences farthest from the reference (in squared MMD) become the candidate
// set, and the reference is re-estimated as the sequence closest to the pool
// of remaining candidates-for-nominal. The loop stops when the candidate set
// repeats or after max_iterations re-estimations. max_iterations = 0 gives the
// single-pass variant.
//
// test_unknown: the count is unknown. If every pairwise statistic is below
// lambda the test rejects (no outliers); otherwise it picks a random center,
// pairs it with the farthest sequence, splits all sequences by the nearer
// center and reports the smaller cluster.
//
// Indices are 0-based throughout.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "oht/kernel.hpp"
#include "oht/mmd.hpp"

namespace oht {

/// Either "no outliers" (reject) or a non-empty outlier index set, kept sorted.
class Hypothesis {
 public:
  static Hypothesis reject() { return Hypothesis(); }
  static Hypothesis outliers(std::vector<std::size_t> indices);

  bool is_reject() const { return reject_; }
  const std::vector<std::size_t>& indices() const { return indices_; }

  bool operator==(const Hypothesis&) const = default;

 private:
  Hypothesis() = default;
  bool reject_ = true;
  std::vector<std::size_t> indices_;
};

/// Largest admissible outlier count for M sequences: ceil(M/2) - 1.
std::size_t max_outliers(std::size_t count);

struct KnownTestOptions {
  std::size_t s = 1;
  std::size_t max_iterations = 10;
  std::uint64_t seed = 0;
};

struct UnknownTestOptions {
  double lambda = 0.0;
  std::uint64_t seed = 0;
};

struct TestTrace {
  /// Known test: initial draw, step-3 reference, then each re-estimated reference.
  /// Unknown test: the two cluster centers (empty on reject).
  std::vector<std::size_t> reference_history;
  /// Candidate set produced by each ranking round (known test) or the final
  /// clusters C1, C2 (unknown test).
  std::vector<std::vector<std::size_t>> candidate_sets;
  std::size_t iterations = 0;     ///< re-estimations executed
  std::uint64_t mmd_evals = 0;    ///< logical estimator calls
  std::uint64_t ranking_evals = 0;
  std::uint64_t pooled_evals = 0;
  double max_pairwise = 0.0;      ///< unknown test only
  bool cluster_tie = false;       ///< unknown test: |C1| == |C2|

  bool operator==(const TestTrace&) const = default;
};

struct DetectionResult {
  Hypothesis hypothesis;
  TestTrace trace;
};

DetectionResult test_known(const SequenceSet& seqs, const KnownTestOptions& opts,
                           const KernelSpec& kernel);
/// Same test over a caller-owned cache (lets several tests share kernel sums).
DetectionResult test_known(KernelSumCache& cache, const KnownTestOptions& opts);

DetectionResult test_unknown(const SequenceSet& seqs, const UnknownTestOptions& opts,
                             const KernelSpec& kernel);
/// Same test given the precomputed pairwise matrix.
DetectionResult test_unknown(const MmdMatrix& matrix, const UnknownTestOptions& opts);

}  // namespace oht
