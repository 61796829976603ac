// SPDX-License-Identifier: Apache-2.0
#include "oht/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "oht/errors.hpp"
#include "oht/random.hpp"

namespace oht {

namespace {

constexpr std::uint64_t kTestStream = 1;

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(t) for t in [0, count) on `jobs` threads. fn must only write
// per-index state; the first exception is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::uint64_t count, unsigned jobs, Fn&& fn) {
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(resolve_jobs(jobs), std::max<std::uint64_t>(count, 1)));
  if (jobs <= 1) {
    for (std::uint64_t t = 0; t < count; ++t) fn(t);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::uint64_t t; (t = next.fetch_add(1)) < count;) {
        try {
          fn(t);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  workers.clear();
  if (error) std::rethrow_exception(error);
}

std::size_t resolve_cap(std::size_t cap, std::size_t count) {
  const std::size_t limit = max_outliers(count);
  if (cap == 0) return limit;
  if (cap > limit) {
    throw ConfigError("outlier cap T=" + std::to_string(cap) + " exceeds ceil(M/2)-1=" +
                      std::to_string(limit));
  }
  return cap;
}

void validate_pairing(const ScenarioSpec& scenario, const TestConfig& test) {
  scenario.validate();
  if (const auto* known = std::get_if<KnownTestConfig>(&test)) {
    if (scenario.outlier_set.empty() || scenario.outlier_set.size() != known->s) {
      throw ConfigError("known-count test needs a scenario with exactly s=" +
                        std::to_string(known->s) + " planted outliers");
    }
  } else {
    const auto& unknown = std::get<UnknownTestConfig>(test);
    if (!(std::isfinite(unknown.lambda) && unknown.lambda > 0.0)) {
      throw ConfigError("lambda must be positive");
    }
    const std::size_t cap = resolve_cap(unknown.cap, scenario.count);
    if (scenario.outlier_set.size() > cap) {
      throw ConfigError("scenario plants more outliers than the cap T=" + std::to_string(cap));
    }
  }
}

Hypothesis truth_of(const ScenarioSpec& scenario) {
  return scenario.outlier_set.empty() ? Hypothesis::reject()
                                      : Hypothesis::outliers(scenario.outlier_set);
}

ScenarioSpec trial_scenario(const ScenarioSpec& scenario, std::uint64_t trial) {
  ScenarioSpec spec = scenario;
  spec.seed = derive_key(scenario.seed, {trial});
  return spec;
}

std::uint64_t trial_test_seed(const ScenarioSpec& scenario, std::uint64_t trial) {
  return derive_key(scenario.seed, {trial, kTestStream});
}

void tally(ErrorEstimates& est, Outcome outcome) {
  switch (outcome) {
    case Outcome::correct:
      break;
    case Outcome::misclassified:
      ++est.miscls_count;
      break;
    case Outcome::false_reject:
      ++est.false_reject_count;
      break;
    case Outcome::false_alarm:
      ++est.false_alarm_count;
      break;
  }
}

struct TrialRecord {
  Outcome outcome = Outcome::correct;
  bool over_cap = false;
};

}  // namespace

std::string_view outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::correct:
      return "correct";
    case Outcome::misclassified:
      return "misclassified";
    case Outcome::false_reject:
      return "false_reject";
    case Outcome::false_alarm:
      return "false_alarm";
  }
  return "?";
}

Outcome classify(const Hypothesis& truth, const Hypothesis& decision) {
  if (truth.is_reject()) return decision.is_reject() ? Outcome::correct : Outcome::false_alarm;
  if (decision.is_reject()) return Outcome::false_reject;
  return decision == truth ? Outcome::correct : Outcome::misclassified;
}

double ErrorEstimates::rate(std::uint64_t count, std::uint64_t trials) {
  return trials == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(trials);
}

double ErrorEstimates::standard_error(std::uint64_t count, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  const double p = rate(count, trials);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double ErrorEstimates::smoothed(std::uint64_t count, std::uint64_t trials) {
  return (static_cast<double>(count) + 1.0) / (static_cast<double>(trials) + 2.0);
}

TrialOutcome run_single_trial(const ScenarioSpec& scenario, const TestConfig& test,
                              std::uint64_t trial, const KernelSpec& kernel) {
  const SequenceSet seqs = generate(trial_scenario(scenario, trial));
  const std::uint64_t test_seed = trial_test_seed(scenario, trial);
  Hypothesis decision = Hypothesis::reject();
  if (const auto* known = std::get_if<KnownTestConfig>(&test)) {
    decision = test_known(seqs, {known->s, known->max_iterations, test_seed}, kernel).hypothesis;
  } else {
    const auto& unknown = std::get<UnknownTestConfig>(test);
    decision = test_unknown(seqs, {unknown.lambda, test_seed}, kernel).hypothesis;
  }
  Hypothesis truth = truth_of(scenario);
  const Outcome outcome = classify(truth, decision);
  return {std::move(truth), std::move(decision), outcome};
}

ErrorEstimates run_trials(const ScenarioSpec& scenario, const TestConfig& test, std::uint64_t trials,
                          const HarnessOptions& options) {
  if (trials < 1) throw ConfigError("at least one trial is required");
  validate_pairing(scenario, test);
  options.kernel.validate();

  std::size_t cap = scenario.count;
  if (const auto* unknown = std::get_if<UnknownTestConfig>(&test)) {
    cap = resolve_cap(unknown->cap, scenario.count);
  }

  std::vector<TrialRecord> records(trials);
  parallel_for(trials, options.jobs, [&](std::uint64_t t) {
    const TrialOutcome out = run_single_trial(scenario, test, t, options.kernel);
    records[t].outcome = out.classification;
    records[t].over_cap = !out.decision.is_reject() && out.decision.indices().size() > cap;
  });

  ErrorEstimates est;
  est.trials = trials;
  for (const auto& r : records) {
    tally(est, r.outcome);
    if (r.over_cap) ++est.over_cap_count;
  }
  return est;
}

std::vector<SweepPoint> sweep_n(const ScenarioSpec& base, const TestConfig& test,
                                std::span<const std::size_t> n_values, std::uint64_t trials,
                                const HarnessOptions& options) {
  std::vector<SweepPoint> out;
  out.reserve(n_values.size());
  for (const std::size_t n : n_values) {
    ScenarioSpec spec = base;
    spec.length = n;
    out.push_back({n, run_trials(spec, test, trials, options)});
  }
  return out;
}

std::vector<LambdaPoint> sweep_lambda(const ScenarioSpec& base, std::span<const double> alpha_values,
                                      std::size_t n, std::uint64_t trials,
                                      const HarnessOptions& options, std::size_t cap) {
  if (trials < 1) throw ConfigError("at least one trial is required");
  if (alpha_values.empty()) throw ConfigError("empty alpha grid");
  for (const double a : alpha_values) {
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("alpha values must lie in (0, 1)");
  }
  options.kernel.validate();

  ScenarioSpec non_null = base;
  non_null.length = n;
  ScenarioSpec null = non_null;
  null.outlier_set.clear();
  const double mmd2_pop = gaussian_population_mmd2(base.nominal, base.anomalous, options.kernel.sigma0);
  if (!(mmd2_pop > 0.0)) throw ConfigError("nominal and anomalous distributions coincide");

  const std::size_t resolved_cap = resolve_cap(cap, base.count);
  std::vector<double> lambdas;
  for (const double a : alpha_values) {
    lambdas.push_back(a * mmd2_pop);
    validate_pairing(non_null, UnknownTestConfig{lambdas.back(), resolved_cap});
  }
  null.validate();

  const std::size_t grid = alpha_values.size();
  std::vector<TrialRecord> alt(trials * grid);
  std::vector<TrialRecord> nul(trials * grid);
  const Hypothesis truth_alt = truth_of(non_null);
  const Hypothesis truth_null = Hypothesis::reject();

  parallel_for(trials, options.jobs, [&](std::uint64_t t) {
    const std::uint64_t test_seed = trial_test_seed(base, t);
    const SequenceSet alt_seqs = generate(trial_scenario(non_null, t));
    const SequenceSet null_seqs = generate(trial_scenario(null, t));
    const MmdMatrix alt_matrix = mmd2_matrix(alt_seqs, options.kernel);
    const MmdMatrix null_matrix = mmd2_matrix(null_seqs, options.kernel);
    for (std::size_t g = 0; g < grid; ++g) {
      const UnknownTestOptions opts{lambdas[g], test_seed};
      const Hypothesis d_alt = test_unknown(alt_matrix, opts).hypothesis;
      const Hypothesis d_null = test_unknown(null_matrix, opts).hypothesis;
      alt[t * grid + g] = {classify(truth_alt, d_alt),
                           !d_alt.is_reject() && d_alt.indices().size() > resolved_cap};
      nul[t * grid + g] = {classify(truth_null, d_null),
                           !d_null.is_reject() && d_null.indices().size() > resolved_cap};
    }
  });

  std::vector<LambdaPoint> out(grid);
  for (std::size_t g = 0; g < grid; ++g) {
    out[g].alpha = alpha_values[g];
    out[g].lambda = lambdas[g];
    out[g].n = n;
    out[g].non_null.trials = trials;
    out[g].null.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
      tally(out[g].non_null, alt[t * grid + g].outcome);
      tally(out[g].null, nul[t * grid + g].outcome);
      if (alt[t * grid + g].over_cap) ++out[g].non_null.over_cap_count;
      if (nul[t * grid + g].over_cap) ++out[g].null.over_cap_count;
    }
  }
  return out;
}

ExponentFit fit_exponent(std::span<const RatePoint> points, bool include_saturated) {
  std::vector<std::pair<double, double>> usable;
  for (const auto& p : points) {
    if (p.trials == 0) continue;
    const bool saturated = p.count == 0 || p.count >= p.trials;
    if (saturated && !include_saturated) continue;
    usable.emplace_back(p.n, -std::log(ErrorEstimates::smoothed(p.count, p.trials)));
  }
  if (usable.size() < 3) {
    throw EstimationError("exponent fit needs at least 3 usable points, got " +
                          std::to_string(usable.size()));
  }

  const double k = static_cast<double>(usable.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [x, y] : usable) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= k;
  mean_y /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : usable) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
    syy += (y - mean_y) * (y - mean_y);
  }
  if (!(sxx > 0.0)) throw EstimationError("exponent fit needs at least two distinct n values");

  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ss_res = 0.0;
  for (const auto& [x, y] : usable) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.n_min = usable.front().first;
  fit.n_max = usable.front().first;
  for (const auto& [x, y] : usable) {
    fit.n_min = std::min(fit.n_min, x);
    fit.n_max = std::max(fit.n_max, x);
  }
  fit.points = usable.size();
  return fit;
}

}  // namespace oht
