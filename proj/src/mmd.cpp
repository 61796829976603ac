// SPDX-License-Identifier: Apache-2.0
#include "oht/mmd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oht/errors.hpp"
#include "oht/simd/kernel_sums.hpp"

namespace oht {

namespace {

void require_finite(std::span<const double> x, const char* what) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k])) {
      throw DataError(std::string(what) + ": non-finite sample at position " + std::to_string(k));
    }
  }
}

double within_ordered_sum(std::span<const double> x, const KernelSpec& kernel) {
  // Sum over ordered pairs i != j is twice the i < j sum; doubling is exact.
  return 2.0 * simd::gaussian_pair_sum(x, kernel.gamma());
}

// Outer argument picked by content (size, then lexicographic): swapping the
// arguments gives a bit-identical statistic.
double canonical_cross_sum(std::span<const double> x, std::span<const double> y,
                           const KernelSpec& kernel) {
  const bool swap = y.size() < x.size() ||
                    (y.size() == x.size() &&
                     std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end()));
  return swap ? simd::gaussian_cross_sum(y, x, kernel.gamma())
              : simd::gaussian_cross_sum(x, y, kernel.gamma());
}

double combine(double within_x, std::size_t nx, double within_y, std::size_t ny, double cross) {
  const double fx = static_cast<double>(nx);
  const double fy = static_cast<double>(ny);
  const double tx = within_x / (fx * (fx - 1.0));
  const double ty = within_y / (fy * (fy - 1.0));
  return (tx + ty) - 2.0 * (cross / (fx * fy));
}

}  // namespace

SequenceSet::SequenceSet(std::size_t count, std::size_t length, std::vector<double> data)
    : count_(count), length_(length), data_(std::move(data)) {
  if (count_ < 3) {
    throw ConfigError("a sequence set needs at least 3 sequences, got " + std::to_string(count_));
  }
  if (length_ < 2) {
    throw ConfigError("sequences need at least 2 samples, got " + std::to_string(length_));
  }
  if (data_.size() != count_ * length_) {
    throw ConfigError("sequence data size does not match count x length");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!std::isfinite(data_[k])) {
      throw DataError("non-finite sample in sequence " + std::to_string(k / length_ + 1) +
                      ", position " + std::to_string(k % length_ + 1));
    }
  }
}

SequenceSet SequenceSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ConfigError("empty sequence set");
  const std::size_t length = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * length);
  for (const auto& r : rows) {
    if (r.size() != length) throw ConfigError("sequences must all have the same length");
    data.insert(data.end(), r.begin(), r.end());
  }
  return SequenceSet(rows.size(), length, std::move(data));
}

std::span<const double> SequenceSet::row(std::size_t i) const {
  return {data_.data() + i * length_, length_};
}

double MmdMatrix::max_off_diagonal() const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count_; ++i) {
    for (std::size_t j = i + 1; j < count_; ++j) best = std::max(best, (*this)(i, j));
  }
  return best;
}

double mmd2_unbiased(std::span<const double> x, std::span<const double> y, const KernelSpec& kernel) {
  kernel.validate();
  if (x.size() < 2 || y.size() < 2) {
    throw PreconditionError("mmd2_unbiased needs at least 2 samples per collection");
  }
  require_finite(x, "first collection");
  require_finite(y, "second collection");
  return combine(within_ordered_sum(x, kernel), x.size(), within_ordered_sum(y, kernel), y.size(),
                 canonical_cross_sum(x, y, kernel));
}

MmdMatrix mmd2_matrix(const SequenceSet& seqs, const KernelSpec& kernel) {
  KernelSumCache cache(seqs, kernel);
  return cache.matrix();
}

double mmd2_vs_pool(std::size_t i, std::span<const std::size_t> pool, const SequenceSet& seqs,
                    const KernelSpec& kernel) {
  if (pool.empty()) throw PreconditionError("mmd2_vs_pool: empty pool");
  if (i >= seqs.count()) throw PreconditionError("mmd2_vs_pool: index out of range");
  std::vector<std::size_t> members(pool.begin(), pool.end());
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw PreconditionError("mmd2_vs_pool: duplicate pool member");
  }
  std::vector<double> pooled;
  pooled.reserve(members.size() * seqs.length());
  for (const std::size_t j : members) {
    if (j == i) throw PreconditionError("mmd2_vs_pool: pool must exclude the tested sequence");
    if (j >= seqs.count()) throw PreconditionError("mmd2_vs_pool: index out of range");
    const auto r = seqs.row(j);
    pooled.insert(pooled.end(), r.begin(), r.end());
  }
  return mmd2_unbiased(seqs.row(i), pooled, kernel);
}

KernelSumCache::KernelSumCache(const SequenceSet& seqs, const KernelSpec& kernel)
    : seqs_(&seqs),
      kernel_(kernel),
      within_(seqs.count(), 0.0),
      cross_(seqs.count() * seqs.count(), 0.0),
      within_ready_(seqs.count(), 0),
      cross_ready_(seqs.count() * seqs.count(), 0) {
  kernel_.validate();
}

double KernelSumCache::within(std::size_t i) {
  if (!within_ready_[i]) {
    within_[i] = within_ordered_sum(seqs_->row(i), kernel_);
    within_ready_[i] = 1;
    ++blocks_evaluated_;
  }
  return within_[i];
}

double KernelSumCache::cross(std::size_t i, std::size_t j) {
  const std::size_t m = seqs_->count();
  const std::size_t key = std::min(i, j) * m + std::max(i, j);
  if (!cross_ready_[key]) {
    if (i == j) {
      // Sum over all n^2 pairs = ordered off-diagonal pairs + the n diagonal terms.
      double diag = 0.0;
      for (const double v : seqs_->row(i)) diag += kernel_eval(kernel_, v, v);
      cross_[key] = within(i) + diag;
    } else {
      cross_[key] = canonical_cross_sum(seqs_->row(i), seqs_->row(j), kernel_);
      ++blocks_evaluated_;
    }
    cross_ready_[key] = 1;
  }
  return cross_[key];
}

double KernelSumCache::mmd2(std::size_t i, std::size_t j) {
  const std::size_t n = seqs_->length();
  return combine(within(i), n, within(j), n, cross(i, j));
}

double KernelSumCache::mmd2_vs_pool(std::size_t i, std::span<const std::size_t> pool) {
  if (pool.empty()) throw PreconditionError("mmd2_vs_pool: empty pool");
  const std::size_t n = seqs_->length();
  double pool_within = 0.0;
  double against = 0.0;
  for (std::size_t a = 0; a < pool.size(); ++a) {
    const std::size_t pa = pool[a];
    if (pa == i) throw PreconditionError("mmd2_vs_pool: pool must exclude the tested sequence");
    pool_within += within(pa);
    for (std::size_t b = a + 1; b < pool.size(); ++b) pool_within += 2.0 * cross(pa, pool[b]);
    against += cross(i, pa);
  }
  return combine(within(i), n, pool_within, pool.size() * n, against);
}

MmdMatrix KernelSumCache::matrix() {
  const std::size_t m = seqs_->count();
  MmdMatrix out(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) out.set(i, j, mmd2(i, j));
  }
  return out;
}

}  // namespace oht
