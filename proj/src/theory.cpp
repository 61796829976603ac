// SPDX-License-Identifier: Apache-2.0
#include "oht/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oht/errors.hpp"

namespace oht {

namespace {

void require_nonnegative(double v, const char* what) {
  if (!(std::isfinite(v) && v >= 0.0)) throw DomainError(std::string(what) + " must be >= 0");
}

void require_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0)) throw DomainError(std::string(what) + " must be > 0");
}

}  // namespace

void GaussianSpec::validate() const {
  if (!std::isfinite(mu)) throw ConfigError("Gaussian mean must be finite");
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    throw ConfigError("Gaussian standard deviation must be positive");
  }
}

double gaussian_kernel_mean(const GaussianSpec& p, const GaussianSpec& q, double sigma0) {
  p.validate();
  q.validate();
  if (!(std::isfinite(sigma0) && sigma0 > 0.0)) throw ConfigError("sigma0 must be positive");
  const double v = sigma0 * sigma0 + p.sigma * p.sigma + q.sigma * q.sigma;
  const double d = p.mu - q.mu;
  return sigma0 / std::sqrt(v) * std::exp(-(d * d) / (2.0 * v));
}

double gaussian_population_mmd2(const GaussianSpec& p, const GaussianSpec& q, double sigma0) {
  const double value = gaussian_kernel_mean(p, p, sigma0) + gaussian_kernel_mean(q, q, sigma0) -
                       2.0 * gaussian_kernel_mean(p, q, sigma0);
  // Rounding can push a tiny true value just below zero.
  return std::max(value, 0.0);
}

double exponent_bound_known(double mmd2_pop, double k0) {
  require_nonnegative(mmd2_pop, "population MMD^2");
  require_positive(k0, "K0");
  return (mmd2_pop * mmd2_pop) / (96.0 * k0 * k0);
}

ExponentBounds exponent_bounds_unknown(double mmd2_pop, double k0, double lambda) {
  require_nonnegative(mmd2_pop, "population MMD^2");
  require_positive(k0, "K0");
  require_positive(lambda, "lambda");
  const double gap = std::max(0.0, mmd2_pop - lambda);
  const double k0sq = k0 * k0;
  return {(mmd2_pop * mmd2_pop) / (96.0 * k0sq), (gap * gap) / (64.0 * k0sq),
          (lambda * lambda) / (64.0 * k0sq)};
}

double crossover_lambda(double mmd2_pop) {
  require_nonnegative(mmd2_pop, "population MMD^2");
  return (1.0 - std::sqrt(2.0 / 3.0)) * mmd2_pop;
}

}  // namespace oht
