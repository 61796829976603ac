// SPDX-License-Identifier: Apache-2.0
#include "oht/simgen.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "oht/detect.hpp"
#include "oht/errors.hpp"
#include "oht/random.hpp"

namespace oht {

void ScenarioSpec::validate() const {
  if (count < 3) throw ConfigError("scenario needs M >= 3");
  if (length < 2) throw ConfigError("scenario needs n >= 2");
  nominal.validate();
  anomalous.validate();
  if (outlier_set.size() > max_outliers(count)) {
    throw ConfigError("scenario plants " + std::to_string(outlier_set.size()) +
                      " outliers; at most " + std::to_string(max_outliers(count)) + " allowed");
  }
  auto sorted = outlier_set;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("duplicate index in outlier set");
  }
  if (!sorted.empty() && sorted.back() >= count) {
    throw ConfigError("outlier index out of range");
  }
}

SequenceSet generate(const ScenarioSpec& spec) {
  spec.validate();
  std::vector<bool> is_outlier(spec.count, false);
  for (const std::size_t i : spec.outlier_set) is_outlier[i] = true;

  std::vector<double> data(spec.count * spec.length);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const GaussianSpec& dist = is_outlier[i] ? spec.anomalous : spec.nominal;
    Rng rng(derive_key(spec.seed, {i}));
    double* row = data.data() + i * spec.length;
    for (std::size_t k = 0; k < spec.length; ++k) row[k] = rng.normal(dist.mu, dist.sigma);
  }
  return SequenceSet(spec.count, spec.length, std::move(data));
}

std::vector<std::size_t> leading_outliers(std::size_t s) {
  std::vector<std::size_t> out(s);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

}  // namespace oht
