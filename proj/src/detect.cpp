// SPDX-License-Identifier: Apache-2.0
#include "oht/detect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oht/errors.hpp"
#include "oht/random.hpp"

namespace oht {

namespace {

// Indices ordered by descending value; equal values keep ascending index order.
std::vector<std::size_t> rank_descending(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

std::vector<double> distances_from(KernelSumCache& cache, std::size_t ref) {
  const std::size_t m = cache.sequences().count();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = cache.mmd2(ref, i);
  return out;
}

}  // namespace

Hypothesis Hypothesis::outliers(std::vector<std::size_t> indices) {
  if (indices.empty()) throw PreconditionError("an outlier hypothesis needs a non-empty set");
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw PreconditionError("duplicate index in outlier set");
  }
  Hypothesis h;
  h.reject_ = false;
  h.indices_ = std::move(indices);
  return h;
}

std::size_t max_outliers(std::size_t count) { return (count + 1) / 2 - 1; }

DetectionResult test_known(const SequenceSet& seqs, const KnownTestOptions& opts,
                           const KernelSpec& kernel) {
  KernelSumCache cache(seqs, kernel);
  return test_known(cache, opts);
}

DetectionResult test_known(KernelSumCache& cache, const KnownTestOptions& opts) {
  const std::size_t m = cache.sequences().count();
  if (opts.s < 1 || opts.s > max_outliers(m)) {
    throw ConfigError("outlier count s=" + std::to_string(opts.s) + " outside [1, " +
                      std::to_string(max_outliers(m)) + "] for M=" + std::to_string(m));
  }

  TestTrace trace;
  Rng rng(derive_key(opts.seed, {}));

  const std::size_t first = rng.uniform_index(m);
  trace.reference_history.push_back(first);
  const auto initial_order = rank_descending(distances_from(cache, first));
  trace.ranking_evals += m;

  std::size_t reference = initial_order[(m + 1) / 2 - 1];
  trace.reference_history.push_back(reference);

  std::vector<std::size_t> candidates;
  std::optional<std::vector<std::size_t>> previous;
  for (;;) {
    const auto order = rank_descending(distances_from(cache, reference));
    trace.ranking_evals += m;
    candidates.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(opts.s));
    std::sort(candidates.begin(), candidates.end());
    trace.candidate_sets.push_back(candidates);

    if (previous == candidates || trace.iterations == opts.max_iterations) break;
    previous = candidates;

    std::vector<std::size_t> nominal;
    nominal.reserve(m - opts.s);
    for (std::size_t i = 0; i < m; ++i) {
      if (!std::binary_search(candidates.begin(), candidates.end(), i)) nominal.push_back(i);
    }

    std::vector<std::size_t> pool;
    double best_value = 0.0;
    std::size_t best = nominal.front();
    for (const std::size_t i : nominal) {
      pool.clear();
      for (const std::size_t j : nominal) {
        if (j != i) pool.push_back(j);
      }
      const double v = cache.mmd2_vs_pool(i, pool);
      if (i == nominal.front() || v < best_value) {
        best_value = v;
        best = i;
      }
    }
    trace.pooled_evals += nominal.size();
    reference = best;
    trace.reference_history.push_back(reference);
    ++trace.iterations;
  }

  trace.mmd_evals = trace.ranking_evals + trace.pooled_evals;
  return {Hypothesis::outliers(candidates), std::move(trace)};
}

DetectionResult test_unknown(const SequenceSet& seqs, const UnknownTestOptions& opts,
                             const KernelSpec& kernel) {
  if (!(std::isfinite(opts.lambda) && opts.lambda > 0.0)) {
    throw ConfigError("detection threshold lambda must be positive");
  }
  return test_unknown(mmd2_matrix(seqs, kernel), opts);
}

DetectionResult test_unknown(const MmdMatrix& matrix, const UnknownTestOptions& opts) {
  if (!(std::isfinite(opts.lambda) && opts.lambda > 0.0)) {
    throw ConfigError("detection threshold lambda must be positive");
  }
  const std::size_t m = matrix.count();
  TestTrace trace;
  trace.mmd_evals = static_cast<std::uint64_t>(m) * (m - 1) / 2;
  trace.ranking_evals = trace.mmd_evals;
  trace.max_pairwise = matrix.max_off_diagonal();
  if (trace.max_pairwise < opts.lambda) return {Hypothesis::reject(), std::move(trace)};

  Rng rng(derive_key(opts.seed, {}));
  const std::size_t c1 = rng.uniform_index(m);
  std::size_t c2 = c1 == 0 ? 1 : 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (j != c1 && matrix(c1, j) > matrix(c1, c2)) c2 = j;
  }
  trace.reference_history = {c1, c2};

  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  for (std::size_t k = 0; k < m; ++k) {
    if (k == c1) {
      first.push_back(k);
    } else if (k == c2) {
      second.push_back(k);
    } else if (matrix(c2, k) < matrix(c1, k)) {
      second.push_back(k);
    } else {
      first.push_back(k);
    }
  }
  trace.cluster_tie = first.size() == second.size();
  trace.candidate_sets = {first, second};
  // A tie goes to the cluster anchored at the farthest-point center.
  const auto& smaller = first.size() < second.size() ? first : second;
  return {Hypothesis::outliers(smaller), std::move(trace)};
}

}  // namespace oht
