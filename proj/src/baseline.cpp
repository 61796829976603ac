// SPDX-License-Identifier: Apache-2.0
#include "oht/baseline.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "oht/errors.hpp"

namespace oht {

namespace {

std::uint64_t pair_terms(std::uint64_t n1, std::uint64_t n2) {
  return n1 * (n1 - 1) + n2 * (n2 - 1) + n1 * n2;
}

void require_outlier_count(std::size_t count, std::size_t s) {
  if (s < 1 || s > max_outliers(count)) {
    throw ConfigError("outlier count s=" + std::to_string(s) + " outside [1, " +
                      std::to_string(max_outliers(count)) + "] for M=" + std::to_string(count));
  }
}

// Advances idx to the next s-combination of [0, m) in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t s = idx.size();
  for (std::size_t k = s; k-- > 0;) {
    if (idx[k] < m - s + k) {
      ++idx[k];
      for (std::size_t r = k + 1; r < s; ++r) idx[r] = idx[r - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::known:
      return "known";
    case Algorithm::unknown:
      return "unknown";
    case Algorithm::exhaustive:
      return "exhaustive";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view tag) {
  if (tag == "known" || tag == "alg1") return Algorithm::known;
  if (tag == "unknown" || tag == "alg2") return Algorithm::unknown;
  if (tag == "exhaustive") return Algorithm::exhaustive;
  throw ConfigError("unknown algorithm tag: " + std::string(tag));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) is divisible by i at every step.
    const std::uint64_t g = std::gcd(result, i);
    result = (result / g) * ((n - k + i) / (i / g));
  }
  return result;
}

EvalCount count_mmd_evals(std::size_t count, std::size_t s, std::size_t rounds, Algorithm algorithm,
                          std::size_t length) {
  const std::uint64_t m = count;
  const std::uint64_t n = length;
  EvalCount out;
  out.algorithm = algorithm;
  switch (algorithm) {
    case Algorithm::known:
      if (m < 3) throw ConfigError("known test needs M >= 3");
      require_outlier_count(count, s);
      out.ranking_calls = m + (rounds + 1) * m;
      out.pooled_calls = rounds * (m - s);
      break;
    case Algorithm::unknown:
      if (m < 3) throw ConfigError("unknown test needs M >= 3");
      out.ranking_calls = m * (m - 1) / 2;
      break;
    case Algorithm::exhaustive:
      if (m < 3) throw ConfigError("exhaustive test needs M >= 3");
      require_outlier_count(count, s);
      out.pooled_calls = binomial(m, s) * (m - s);
      break;
  }
  out.estimator_calls = out.ranking_calls + out.pooled_calls;
  if (n >= 2) {
    const std::uint64_t pool = (m - s - 1) * n;
    out.kernel_evals = out.ranking_calls * pair_terms(n, n) +
                       (out.pooled_calls > 0 ? out.pooled_calls * pair_terms(n, pool) : 0);
  }
  return out;
}

ExhaustiveResult exhaustive_known(const SequenceSet& seqs, std::size_t s, const KernelSpec& kernel) {
  const std::size_t m = seqs.count();
  require_outlier_count(m, s);
  kernel.validate();

  std::vector<std::size_t> subset(s);
  std::iota(subset.begin(), subset.end(), std::size_t{0});
  std::vector<std::size_t> best_subset;
  double best_score = 0.0;
  std::uint64_t pooled = 0;

  std::vector<std::size_t> nominal;
  std::vector<std::size_t> pool;
  do {
    nominal.clear();
    for (std::size_t i = 0, k = 0; i < m; ++i) {
      if (k < s && subset[k] == i) {
        ++k;
      } else {
        nominal.push_back(i);
      }
    }
    // Each hypothesis is scored on its own; kernel sums are shared within a
    // candidate's score but not across candidates.
    KernelSumCache cache(seqs, kernel);
    double score = 0.0;
    for (const std::size_t j : nominal) {
      pool.clear();
      for (const std::size_t other : nominal) {
        if (other != j) pool.push_back(other);
      }
      score += cache.mmd2_vs_pool(j, pool);
      ++pooled;
    }
    // Strict improvement only: enumeration order is lexicographic, so ties keep the first.
    if (best_subset.empty() || score < best_score) {
      best_score = score;
      best_subset = subset;
    }
  } while (next_combination(subset, m));

  ExhaustiveResult out{Hypothesis::outliers(best_subset),
                       count_mmd_evals(m, s, 0, Algorithm::exhaustive, seqs.length()),
                       best_score};
  if (out.count.pooled_calls != pooled) {
    throw std::logic_error("exhaustive enumeration count disagrees with C(M, s) (M - s)");
  }
  return out;
}

}  // namespace oht
