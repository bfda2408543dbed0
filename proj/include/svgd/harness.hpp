#ifndef SVGD_HARNESS_HPP
#define SVGD_HARNESS_HPP

#include <memory>
#include <string>
#include <vector>

#include "svgd/config.hpp"
#include "svgd/dynamics.hpp"
#include "svgd/report.hpp"
#include "svgd/schedule.hpp"

namespace svgd {

/// Target, kernel and (for logistic targets) dataset resolved from a config.
struct Experiment {
  Target target;
  Kernel kernel;
  std::shared_ptr<const Dataset> data;
  int dimension = 1;
};

Experiment build_experiment(const RunConfig& config);

/// i.i.d. normal initial positions from the run's init stream.
Matrix initial_ensemble(const RunConfig& config, int dimension);

/// One full experiment: init, iterate, snapshot, summarize. Deterministic
/// given (config, seed); wall-clock fields are the only exception.
RunResult run(const RunConfig& config);

/// Same, but from a caller-supplied initial ensemble (multi-method protocols
/// share initial positions per seed).
RunResult run_from(const RunConfig& config, const Experiment& experiment,
                   const Matrix& initial);

// ---------------------------------------------------------------------------
// Method comparison (sampling accuracy / prediction accuracy vs batch size)

struct MethodAggregate {
  std::string label;
  Method method = Method::svgd;
  int batch_size = 0;  // 0 for the full method
  std::vector<double> mse;  // mixture targets: MSE of the three observables
  std::vector<double> final_mean;  // mean final metrics over runs
  std::vector<double> checkpoint_mean;  // primary metric per checkpoint
  std::vector<double> checkpoint_std;
  double mean_runtime_seconds = 0.0;
  double speedup = 1.0;  // runtime(full) / runtime(this)
  int failures = 0;
};

struct CompareReport {
  std::vector<int> checkpoints;
  std::vector<MethodAggregate> methods;
  int runs = 0;
  std::string primary_metric;  // "E[x]" or "accuracy"
};

/// Runs the full method plus one partition-RBM variant per batch size, with
/// seeds base+1..base+runs and shared initial positions per seed.
CompareReport compare(const RunConfig& base, const std::vector<int>& batch_sizes,
                      int runs);

std::string compare_table(const CompareReport& report);
std::string compare_to_json_text(const CompareReport& report);

// ---------------------------------------------------------------------------
// Batch-consistency diagnostics

struct ExhaustiveNoiseStats {
  double max_abs_mean_component = 0.0;   // over particles and components
  double max_rel_second_moment_error = 0.0;
  long partitions = 0;
};

/// Enumerates every partition at batch size p (requires p | N) and checks the
/// zero-mean and second-moment laws of the batch noise for every particle.
ExhaustiveNoiseStats exhaustive_noise_stats(const Matrix& positions,
                                            const Kernel& kernel,
                                            const Target& target, int p);

struct MonteCarloNoiseStats {
  double max_abs_mean_over_se = 0.0;  // per-component |mean| / standard error
  double second_moment_rel_error = 0.0;
  double mean_squared = 0.0;
  double predicted_squared = 0.0;
  long draws = 0;
};

/// Same laws for one particle, estimated from sampled partitions.
MonteCarloNoiseStats monte_carlo_noise_stats(const Matrix& positions,
                                             const Kernel& kernel,
                                             const Target& target, int p,
                                             long draws, Rng& rng,
                                             int particle = 0);

struct IncidenceStats {
  double pair_frequency = 0.0;
  double pair_probability = 0.0;
  double triple_frequency = 0.0;
  double triple_probability = 0.0;
  long draws = 0;
};

/// Frequency of two (resp. three) fixed indices sharing a batch over sampled
/// partitions, against the closed-form laws.
IncidenceStats incidence_stats(int n, int p, long draws, Rng& rng);

struct ConsistencyCheck {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct ConsistencyReport {
  std::vector<ConsistencyCheck> checks;
  bool all_pass = true;
};

/// Exhaustive (when enumerable), Monte Carlo and incidence-law checks at the
/// given particle count and batch sizes. Forces come from the 1D mixture
/// target with a normalized gaussian kernel.
ConsistencyReport consistency_suite(int n, const std::vector<int>& batch_sizes,
                                    long trials, std::uint64_t seed);

std::string consistency_table(const ConsistencyReport& report);

// ---------------------------------------------------------------------------
// Step-size scaling of the coupled deviation

struct ScalingCell {
  double eta = 0.0;
  int steps = 0;
  double mean_squared_dev = 0.0;
  int failures = 0;
};

struct ScalingReport {
  std::vector<ScalingCell> cells;
  double slope = 0.0;  // log-log fit of deviation vs eta
  bool monotone_non_increasing = true;
};

/// Couples the full and partition-RBM dynamics from shared initial ensembles
/// under a fixed step, and measures the mean squared deviation at the shared
/// horizon for each eta.
ScalingReport scaling_suite(const RunConfig& base,
                            const std::vector<double>& etas, int seeds,
                            double horizon);

std::string scaling_table(const ScalingReport& report);

// ---------------------------------------------------------------------------
// Per-iteration cost

struct BenchCell {
  int n = 0;
  int p = 0;  // 0 for the full method
  double seconds_per_iteration = 0.0;
  double coefficient_of_variation = 0.0;
};

struct BenchReport {
  std::vector<BenchCell> cells;
  int dimension = 2;
  int iterations = 0;
};

/// Times the steppers on an exact-mode quadratic target; warmup iterations
/// are excluded.
BenchReport bench_suite(const std::vector<int>& particle_counts,
                        const std::vector<int>& batch_sizes, int dimension,
                        int iterations, std::uint64_t seed);

std::string bench_table(const BenchReport& report);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace svgd

#endif
