// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oht/kernel.hpp"

namespace oht {

/// M sequences of n real samples each, stored row-major. Requires M >= 3,
/// n >= 2 and finite entries.
class SequenceSet {
 public:
  SequenceSet(std::size_t count, std::size_t length, std::vector<double> data);

  static SequenceSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t count() const { return count_; }
  std::size_t length() const { return length_; }
  std::span<const double> row(std::size_t i) const;
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t count_;
  std::size_t length_;
  std::vector<double> data_;
};

/// Symmetric M x M table of pairwise squared-MMD statistics. The diagonal holds
/// the estimator applied to a row against itself (cross term includes i == j),
/// which is slightly negative in general.
class MmdMatrix {
 public:
  explicit MmdMatrix(std::size_t count) : count_(count), values_(count * count, 0.0) {}

  std::size_t count() const { return count_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * count_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * count_, count_};
  }

  /// Writes (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v) {
    values_[i * count_ + j] = v;
    values_[j * count_ + i] = v;
  }

  double max_off_diagonal() const;

 private:
  std::size_t count_;
  std::vector<double> values_;
};

/// Unbiased squared MMD between two sample collections (each of length >= 2).
/// Exchanging x and y yields a bit-identical result.
double mmd2_unbiased(std::span<const double> x, std::span<const double> y, const KernelSpec& kernel);

/// All pairwise statistics; each off-diagonal pair is computed once and mirrored.
MmdMatrix mmd2_matrix(const SequenceSet& seqs, const KernelSpec& kernel);

/// mmd2_unbiased(row i, concatenation of the pool rows in ascending index order).
double mmd2_vs_pool(std::size_t i, std::span<const std::size_t> pool, const SequenceSet& seqs,
                    const KernelSpec& kernel);

/// Lazily memoized block kernel sums over a SequenceSet.
///
/// Every statistic the detectors need (row vs row, row vs pooled rows) is a
/// ratio of per-row within sums and per-pair cross sums, so each block is
/// computed at most once and reused. Row-vs-row values are bit-identical to
/// mmd2_unbiased; pooled values agree with mmd2_vs_pool up to reassociation.
class KernelSumCache {
 public:
  KernelSumCache(const SequenceSet& seqs, const KernelSpec& kernel);

  const SequenceSet& sequences() const { return *seqs_; }
  const KernelSpec& kernel() const { return kernel_; }

  /// mmd2_unbiased(row i, row j); diagonal per the self-comparison convention.
  double mmd2(std::size_t i, std::size_t j);

  /// Statistic of row i against the concatenation of the pool rows.
  double mmd2_vs_pool(std::size_t i, std::span<const std::size_t> pool);

  /// Fills every block and returns the full matrix.
  MmdMatrix matrix();

  /// Number of distinct kernel-sum blocks evaluated so far (within + cross).
  std::uint64_t blocks_evaluated() const { return blocks_evaluated_; }

 private:
  double within(std::size_t i);            // ordered-pair sum over i != j in row i
  double cross(std::size_t i, std::size_t j);  // sum over all sample pairs of rows i, j

  const SequenceSet* seqs_;
  KernelSpec kernel_;
  std::vector<double> within_;
  std::vector<double> cross_;
  std::vector<std::uint8_t> within_ready_;
  std::vector<std::uint8_t> cross_ready_;
  std::uint64_t blocks_evaluated_ = 0;
};

}  // namespace oht
