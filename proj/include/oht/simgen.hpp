// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oht/mmd.hpp"
#include "oht/theory.hpp"

namespace oht {

/// Synthetic observation model: rows in outlier_set are i.i.d. anomalous,
/// every other row i.i.d. nominal. An empty outlier_set is the null case.
struct ScenarioSpec {
  std::size_t count = 10;   ///< M
  std::size_t length = 60;  ///< n
  GaussianSpec nominal{0.0, 1.0};
  GaussianSpec anomalous{1.5, 1.0};
  std::vector<std::size_t> outlier_set;  ///< 0-based, ascending after validate()
  std::uint64_t seed = 0;

  /// Throws ConfigError on out-of-range or duplicate indices, or more than
  /// ceil(M/2) - 1 outliers.
  void validate() const;
};

/// Row i draws from the stream derive_key(seed, {i}), so the output does not
/// depend on the order rows are produced in.
SequenceSet generate(const ScenarioSpec& spec);

/// The first s rows, the planted layout used by the experiments.
std::vector<std::size_t> leading_outliers(std::size_t s);

}  // namespace oht
