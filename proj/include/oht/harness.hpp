// SPDX-License-Identifier: Apache-2.0
#pragma once

// Monte Carlo estimation of misclassification, false-reject and false-alarm
// probabilities, parameter sweeps and empirical exponent fitting.
//
// Seed discipline: trial t of a run with scenario seed S draws its data from
// derive_key(S, {t}) and its test randomness from derive_key(S, {t, 1}). Sweeps
// reuse S at every grid point, so curves are paired trial by trial, and the
// results do not depend on the number of worker threads.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "oht/detect.hpp"
#include "oht/kernel.hpp"
#include "oht/simgen.hpp"

namespace oht {

enum class Outcome { correct, misclassified, false_reject, false_alarm };

std::string_view outcome_name(Outcome outcome);

/// Total map from (truth, decision) to an error category.
Outcome classify(const Hypothesis& truth, const Hypothesis& decision);

struct TrialOutcome {
  Hypothesis truth;
  Hypothesis decision;
  Outcome classification;
};

/// Raw counts are the source of truth; every rate is derived from them.
struct ErrorEstimates {
  std::uint64_t trials = 0;
  std::uint64_t miscls_count = 0;
  std::uint64_t false_reject_count = 0;
  std::uint64_t false_alarm_count = 0;
  /// Unknown-count test: decisions whose set exceeds the cap T (left unaltered).
  std::uint64_t over_cap_count = 0;

  static double rate(std::uint64_t count, std::uint64_t trials);
  /// sqrt(p (1 - p) / trials).
  static double standard_error(std::uint64_t count, std::uint64_t trials);
  /// Laplace-smoothed (count + 1) / (trials + 2), strictly inside (0, 1).
  static double smoothed(std::uint64_t count, std::uint64_t trials);

  double beta_hat() const { return rate(miscls_count, trials); }
  double zeta_hat() const { return rate(false_reject_count, trials); }
  double fa_hat() const { return rate(false_alarm_count, trials); }
  double beta_se() const { return standard_error(miscls_count, trials); }
  double zeta_se() const { return standard_error(false_reject_count, trials); }
  double fa_se() const { return standard_error(false_alarm_count, trials); }

  /// Any error under a non-null hypothesis (misclassification or false reject).
  std::uint64_t non_null_count() const { return miscls_count + false_reject_count; }
  double non_null_hat() const { return rate(non_null_count(), trials); }
  double non_null_se() const { return standard_error(non_null_count(), trials); }

  bool operator==(const ErrorEstimates&) const = default;
};

struct KnownTestConfig {
  std::size_t s = 1;
  std::size_t max_iterations = 10;
};

struct UnknownTestConfig {
  double lambda = 0.0;
  std::size_t cap = 0;  ///< T; 0 selects ceil(M/2) - 1
};

using TestConfig = std::variant<KnownTestConfig, UnknownTestConfig>;

struct HarnessOptions {
  KernelSpec kernel{};
  unsigned jobs = 1;  ///< worker threads; 0 uses hardware concurrency
};

/// One trial, fully determined by (scenario, test, trial index).
TrialOutcome run_single_trial(const ScenarioSpec& scenario, const TestConfig& test,
                              std::uint64_t trial, const KernelSpec& kernel);

ErrorEstimates run_trials(const ScenarioSpec& scenario, const TestConfig& test, std::uint64_t trials,
                          const HarnessOptions& options = {});

struct SweepPoint {
  std::size_t n = 0;
  ErrorEstimates estimates;
};

/// run_trials at each n, in the given order, with shared trial seeds.
std::vector<SweepPoint> sweep_n(const ScenarioSpec& base, const TestConfig& test,
                                std::span<const std::size_t> n_values, std::uint64_t trials,
                                const HarnessOptions& options = {});

struct LambdaPoint {
  double alpha = 0.0;
  double lambda = 0.0;
  std::size_t n = 0;
  ErrorEstimates non_null;  ///< planted outliers (base.outlier_set)
  ErrorEstimates null;      ///< same trial seeds, no outliers
};

/// Unknown-count test at lambda = alpha * MMD^2(nominal, anomalous), alpha in (0, 1).
/// Each trial's pairwise matrix is computed once and shared by every alpha.
std::vector<LambdaPoint> sweep_lambda(const ScenarioSpec& base, std::span<const double> alpha_values,
                                      std::size_t n, std::uint64_t trials,
                                      const HarnessOptions& options = {}, std::size_t cap = 0);

struct RatePoint {
  double n = 0.0;
  std::uint64_t count = 0;
  std::uint64_t trials = 0;
};

struct ExponentFit {
  double slope = 0.0;  ///< nats per sample
  double intercept = 0.0;
  double r_squared = 0.0;
  double n_min = 0.0;
  double n_max = 0.0;
  std::size_t points = 0;
};

/// Least squares of -ln(smoothed rate) against n. Points with a raw count of 0
/// or equal to trials are dropped unless include_saturated is set. Throws
/// EstimationError with fewer than 3 usable points.
ExponentFit fit_exponent(std::span<const RatePoint> points, bool include_saturated = false);

}  // namespace oht
