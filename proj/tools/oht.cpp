// SPDX-License-Identifier: Apache-2.0
// oht: command-line front end for the low-complexity outlier tests.
//
//   oht detect FILE (--s K | --lambda L)      run a test on user data
//   oht simulate                              error rates as a function of n
//   oht sweep-lambda                          error rates as a function of lambda
//   oht bounds                                population MMD^2 and exponent bounds
//   oht bench                                 estimator-call counts and wall times
//
// Exit codes: 0 success, 2 usage or input error, 3 internal error.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oht/baseline.hpp"
#include "oht/detect.hpp"
#include "oht/errors.hpp"
#include "oht/harness.hpp"
#include "oht/io.hpp"
#include "oht/kernel.hpp"
#include "oht/simgen.hpp"
#include "oht/theory.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct Distributions {
  double mu_nominal = 0.0;
  double sigma_nominal = 1.0;
  double mu_anomalous = 1.5;
  double sigma_anomalous = 1.0;

  oht::GaussianSpec nominal() const { return {mu_nominal, sigma_nominal}; }
  oht::GaussianSpec anomalous() const { return {mu_anomalous, sigma_anomalous}; }
};

void add_distribution_flags(CLI::App* cmd, Distributions& d) {
  cmd->add_option("--mu-nominal", d.mu_nominal, "Nominal mean")->capture_default_str();
  cmd->add_option("--sigma-nominal", d.sigma_nominal, "Nominal standard deviation")->capture_default_str();
  cmd->add_option("--mu-anomalous", d.mu_anomalous, "Anomalous mean")->capture_default_str();
  cmd->add_option("--sigma-anomalous", d.sigma_anomalous, "Anomalous standard deviation")
      ->capture_default_str();
}

// Writes to --out when given, stdout otherwise. The file is only created once
// the output is complete.
class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {}
  std::ostream& stream() { return buffer_; }
  void commit() {
    if (path_.empty()) {
      std::cout << buffer_.str();
      std::cout.flush();
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw oht::ConfigError("cannot open output file: " + path_);
    file << buffer_.str();
    if (!file) throw std::runtime_error("failed writing output file: " + path_);
  }

 private:
  std::string path_;
  std::ostringstream buffer_;
};

double resolve_lambda(const std::optional<double>& lambda, const std::optional<double>& alpha,
                      const Distributions& d, double sigma0, double default_alpha) {
  if (lambda) return *lambda;
  const double a = alpha.value_or(default_alpha);
  if (!(a > 0.0)) throw oht::ConfigError("--alpha must be positive");
  return a * oht::gaussian_population_mmd2(d.nominal(), d.anomalous(), sigma0);
}

std::string join_one_based(const std::vector<std::size_t>& indices) {
  std::string out;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(indices[k] + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct DetectArgs {
  std::string input;
  std::optional<std::size_t> s;
  std::optional<double> lambda;
  double sigma0 = 1.0;
  std::size_t max_iterations = 10;
  std::uint64_t seed = 0;
  bool has_header = false;
  std::string out;
};

void run_detect(const DetectArgs& a) {
  if (a.s.has_value() == a.lambda.has_value()) {
    throw oht::ConfigError("detect needs exactly one of --s or --lambda");
  }
  std::ifstream file;
  std::istream* in = &std::cin;
  if (a.input != "-") {
    file.open(a.input);
    if (!file) throw oht::ConfigError("cannot open input file: " + a.input);
    in = &file;
  }
  const oht::SequenceSet seqs = oht::read_sequences_csv(*in, a.has_header);
  const auto kernel = oht::KernelSpec::gaussian(a.sigma0);
  kernel.validate();

  const oht::DetectionResult result =
      a.s ? oht::test_known(seqs, {*a.s, a.max_iterations, a.seed}, kernel)
          : oht::test_unknown(seqs, {*a.lambda, a.seed}, kernel);

  Output out(a.out);
  if (result.hypothesis.is_reject()) {
    out.stream() << "REJECT\n";
  } else {
    out.stream() << "OUTLIERS: " << join_one_based(result.hypothesis.indices()) << '\n';
  }
  out.stream() << "iterations: " << result.trace.iterations << '\n';
  out.stream() << "mmd_evals: " << result.trace.mmd_evals << '\n';
  out.commit();
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  Distributions dist;
  std::size_t count = 10;
  std::size_t s = 2;
  std::size_t cap = 0;
  std::vector<std::size_t> n_values{5, 15, 25, 35, 45, 55, 65};
  std::string test = "known";
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::size_t max_iterations = 10;
  double sigma0 = 1.0;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out;
};

void run_simulate(const SimulateArgs& a) {
  oht::ScenarioSpec base;
  base.count = a.count;
  base.nominal = a.dist.nominal();
  base.anomalous = a.dist.anomalous();
  base.outlier_set = oht::leading_outliers(a.s);
  base.seed = a.seed;
  const oht::HarnessOptions options{oht::KernelSpec::gaussian(a.sigma0), a.jobs};

  std::vector<oht::SweepPoint> rows;
  if (a.test == "known") {
    if (a.lambda || a.alpha) throw oht::ConfigError("--lambda/--alpha apply to --test unknown only");
    rows = oht::sweep_n(base, oht::KnownTestConfig{a.s, a.max_iterations}, a.n_values, a.trials, options);
  } else if (a.test == "unknown") {
    const double lambda = resolve_lambda(a.lambda, a.alpha, a.dist, a.sigma0, 0.3);
    const oht::UnknownTestConfig test{lambda, a.cap};
    rows = oht::sweep_n(base, test, a.n_values, a.trials, options);
    oht::ScenarioSpec null = base;
    null.outlier_set.clear();
    const auto null_rows = oht::sweep_n(null, test, a.n_values, a.trials, options);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      rows[k].estimates.false_alarm_count = null_rows[k].estimates.false_alarm_count;
    }
  } else {
    throw oht::ConfigError("--test must be 'known' or 'unknown'");
  }

  Output out(a.out);
  oht::write_sweep_n_csv(out.stream(), rows);
  out.commit();
}

// ---------------------------------------------------------------------------

struct SweepLambdaArgs {
  Distributions dist;
  std::size_t count = 10;
  std::size_t s = 2;
  std::size_t cap = 0;
  std::size_t n = 60;
  std::vector<double> alphas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  double sigma0 = 1.0;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out;
};

void run_sweep_lambda(const SweepLambdaArgs& a) {
  oht::ScenarioSpec base;
  base.count = a.count;
  base.nominal = a.dist.nominal();
  base.anomalous = a.dist.anomalous();
  base.outlier_set = oht::leading_outliers(a.s);
  base.seed = a.seed;
  const oht::HarnessOptions options{oht::KernelSpec::gaussian(a.sigma0), a.jobs};
  const auto rows = oht::sweep_lambda(base, a.alphas, a.n, a.trials, options, a.cap);
  Output out(a.out);
  oht::write_sweep_lambda_csv(out.stream(), rows);
  out.commit();
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
  Distributions dist;
  double sigma0 = 1.0;
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::string out;
};

void run_bounds(const BoundsArgs& a) {
  const auto kernel = oht::KernelSpec::gaussian(a.sigma0);
  const double k0 = oht::kernel_bound(kernel);
  const double mmd2 = oht::gaussian_population_mmd2(a.dist.nominal(), a.dist.anomalous(), a.sigma0);
  const double lambda = resolve_lambda(a.lambda, a.alpha, a.dist, a.sigma0, 0.3);
  const auto b = oht::exponent_bounds_unknown(mmd2, k0, lambda);
  Output out(a.out);
  out.stream() << "mmd2_pop,k0,lambda,misclassification_bound,false_reject_bound,false_alarm_bound,"
                  "crossover_lambda\n";
  out.stream() << oht::format_double(mmd2) << ',' << oht::format_double(k0) << ','
               << oht::format_double(lambda) << ',' << oht::format_double(b.misclassification_bound)
               << ',' << oht::format_double(b.false_reject_bound) << ','
               << oht::format_double(b.false_alarm_bound) << ','
               << oht::format_double(oht::crossover_lambda(mmd2)) << '\n';
  out.commit();
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  Distributions dist;
  std::vector<std::size_t> counts{8, 12, 16, 20};
  std::size_t s = 3;
  std::size_t n = 50;
  std::size_t max_iterations = 10;
  std::optional<double> alpha;
  double sigma0 = 1.0;
  std::uint64_t seed = 1;
  bool timing = false;
  std::string out;
};

template <typename Fn>
double seconds(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void run_bench(const BenchArgs& a) {
  const auto kernel = oht::KernelSpec::gaussian(a.sigma0);
  const double lambda = resolve_lambda(std::nullopt, a.alpha, a.dist, a.sigma0, 0.3);
  Output out(a.out);
  out.stream() << "M,s,n,alg1_rounds,alg1_calls,alg2_calls,exhaustive_calls,alg1_kernel_evals,"
                  "alg2_kernel_evals,exhaustive_kernel_evals";
  if (a.timing) out.stream() << ",alg1_seconds,alg2_seconds,exhaustive_seconds";
  out.stream() << '\n';

  for (const std::size_t m : a.counts) {
    oht::ScenarioSpec spec;
    spec.count = m;
    spec.length = a.n;
    spec.nominal = a.dist.nominal();
    spec.anomalous = a.dist.anomalous();
    spec.outlier_set = oht::leading_outliers(a.s);
    spec.seed = a.seed;
    const oht::SequenceSet seqs = oht::generate(spec);

    oht::DetectionResult known{oht::Hypothesis::reject(), {}};
    oht::DetectionResult unknown{oht::Hypothesis::reject(), {}};
    std::optional<oht::ExhaustiveResult> exhaustive;
    const double t1 = seconds([&] { known = oht::test_known(seqs, {a.s, a.max_iterations, a.seed}, kernel); });
    const double t2 = seconds([&] { unknown = oht::test_unknown(seqs, {lambda, a.seed}, kernel); });
    const double t3 = seconds([&] { exhaustive = oht::exhaustive_known(seqs, a.s, kernel); });

    const auto c1 = oht::count_mmd_evals(m, a.s, known.trace.iterations, oht::Algorithm::known, a.n);
    const auto c2 = oht::count_mmd_evals(m, a.s, 0, oht::Algorithm::unknown, a.n);
    if (c1.estimator_calls != known.trace.mmd_evals || c2.estimator_calls != unknown.trace.mmd_evals) {
      throw std::logic_error("trace evaluation counts disagree with the closed forms");
    }
    out.stream() << m << ',' << a.s << ',' << a.n << ',' << known.trace.iterations << ','
                 << c1.estimator_calls << ',' << c2.estimator_calls << ','
                 << exhaustive->count.estimator_calls << ',' << c1.kernel_evals << ','
                 << c2.kernel_evals << ',' << exhaustive->count.kernel_evals;
    if (a.timing) {
      out.stream() << ',' << oht::format_double(t1) << ',' << oht::format_double(t2) << ','
                   << oht::format_double(t3);
    }
    out.stream() << '\n';
    std::cerr << "M=" << m << " alg1=" << t1 << "s alg2=" << t2 << "s exhaustive=" << t3 << "s\n";
  }
  out.commit();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-complexity MMD outlier hypothesis tests"};
  app.require_subcommand(1);

  DetectArgs detect;
  auto* cmd_detect = app.add_subcommand("detect", "Run a test on sequences from a CSV file");
  cmd_detect->add_option("input", detect.input, "CSV file, one sequence per line ('-' for stdin)")
      ->required();
  auto* opt_s = cmd_detect->add_option("--s", detect.s, "Known number of outliers");
  auto* opt_lambda = cmd_detect->add_option("--lambda", detect.lambda, "Detection threshold (unknown count)");
  opt_s->excludes(opt_lambda);
  cmd_detect->add_option("--sigma0", detect.sigma0, "Gaussian kernel bandwidth")->capture_default_str();
  cmd_detect->add_option("--max-iter", detect.max_iterations, "Re-estimation rounds cap")->capture_default_str();
  cmd_detect->add_option("--seed", detect.seed, "Seed for the random draws")->capture_default_str();
  cmd_detect->add_flag("--has-header", detect.has_header, "Skip the first non-comment line");
  cmd_detect->add_option("--out", detect.out, "Output file (default stdout)");

  SimulateArgs sim;
  auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo error rates over sequence lengths");
  add_distribution_flags(cmd_sim, sim.dist);
  cmd_sim->add_option("--M", sim.count, "Number of sequences")->capture_default_str();
  cmd_sim->add_option("--s", sim.s, "Planted outliers (and s for the known test)")->capture_default_str();
  cmd_sim->add_option("--T", sim.cap, "Outlier cap for the unknown test (0: ceil(M/2)-1)")->capture_default_str();
  cmd_sim->add_option("--n", sim.n_values, "Sequence lengths")->delimiter(',')->capture_default_str();
  cmd_sim->add_option("--test", sim.test, "known | unknown")->capture_default_str();
  auto* sim_lambda = cmd_sim->add_option("--lambda", sim.lambda, "Absolute threshold");
  cmd_sim->add_option("--alpha", sim.alpha, "Threshold as a fraction of population MMD^2 (default 0.3)")
      ->excludes(sim_lambda);
  cmd_sim->add_option("--max-iter", sim.max_iterations, "Re-estimation rounds cap")->capture_default_str();
  cmd_sim->add_option("--sigma0", sim.sigma0, "Gaussian kernel bandwidth")->capture_default_str();
  cmd_sim->add_option("--trials", sim.trials, "Trials per point")->capture_default_str();
  cmd_sim->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
  cmd_sim->add_option("--jobs", sim.jobs, "Worker threads (0: all cores)")->capture_default_str();
  cmd_sim->add_option("--out", sim.out, "Output CSV (default stdout)");

  SweepLambdaArgs sl;
  auto* cmd_sl = app.add_subcommand("sweep-lambda", "Monte Carlo error rates over the threshold");
  add_distribution_flags(cmd_sl, sl.dist);
  cmd_sl->add_option("--M", sl.count, "Number of sequences")->capture_default_str();
  cmd_sl->add_option("--s", sl.s, "Planted outliers")->capture_default_str();
  cmd_sl->add_option("--T", sl.cap, "Outlier cap (0: ceil(M/2)-1)")->capture_default_str();
  cmd_sl->add_option("--n", sl.n, "Sequence length")->capture_default_str();
  cmd_sl->add_option("--alpha", sl.alphas, "lambda / population MMD^2 grid")->delimiter(',')->capture_default_str();
  cmd_sl->add_option("--sigma0", sl.sigma0, "Gaussian kernel bandwidth")->capture_default_str();
  cmd_sl->add_option("--trials", sl.trials, "Trials per point")->capture_default_str();
  cmd_sl->add_option("--seed", sl.seed, "Base seed")->capture_default_str();
  cmd_sl->add_option("--jobs", sl.jobs, "Worker threads (0: all cores)")->capture_default_str();
  cmd_sl->add_option("--out", sl.out, "Output CSV (default stdout)");

  BoundsArgs bounds;
  auto* cmd_bounds = app.add_subcommand("bounds", "Population MMD^2 and error-exponent bounds");
  add_distribution_flags(cmd_bounds, bounds.dist);
  cmd_bounds->add_option("--sigma0", bounds.sigma0, "Gaussian kernel bandwidth")->capture_default_str();
  auto* b_lambda = cmd_bounds->add_option("--lambda", bounds.lambda, "Absolute threshold");
  cmd_bounds->add_option("--alpha", bounds.alpha, "Threshold as a fraction of MMD^2 (default 0.3)")
      ->excludes(b_lambda);
  cmd_bounds->add_option("--out", bounds.out, "Output CSV (default stdout)");

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Estimator-call counts and wall times over M");
  add_distribution_flags(cmd_bench, bench.dist);
  cmd_bench->add_option("--M", bench.counts, "Grid of sequence counts")->delimiter(',')->capture_default_str();
  cmd_bench->add_option("--s", bench.s, "Outlier count")->capture_default_str();
  cmd_bench->add_option("--n", bench.n, "Sequence length")->capture_default_str();
  cmd_bench->add_option("--max-iter", bench.max_iterations, "Re-estimation rounds cap")->capture_default_str();
  cmd_bench->add_option("--alpha", bench.alpha, "Unknown-test threshold as a fraction of MMD^2");
  cmd_bench->add_option("--sigma0", bench.sigma0, "Gaussian kernel bandwidth")->capture_default_str();
  cmd_bench->add_option("--seed", bench.seed, "Seed")->capture_default_str();
  cmd_bench->add_flag("--timing", bench.timing, "Add wall-time columns to the CSV");
  cmd_bench->add_option("--out", bench.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_detect) run_detect(detect);
    if (*cmd_sim) run_simulate(sim);
    if (*cmd_sl) run_sweep_lambda(sl);
    if (*cmd_bounds) run_bounds(bounds);
    if (*cmd_bench) run_bench(bench);
  } catch (const oht::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const oht::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const oht::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const oht::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
