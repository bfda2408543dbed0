// Acceptance suite: one verdict line per criterion, nonzero exit on failure.
// Every tolerance is pinned here; the configurations are the desk-scale
// protocols the library is expected to reproduce.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "svgd/harness.hpp"
#include "svgd/metrics.hpp"

namespace {

using Clock = std::chrono::steady_clock;
using svgd::Kernel;
using svgd::Matrix;
using svgd::Method;
using svgd::RunConfig;
using svgd::Target;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

#define EXPECT(outcome, condition, text)                                   \
  do {                                                                     \
    const bool ok_ = (condition);                                          \
    if (!ok_) {                                                            \
      (outcome).pass = false;                                              \
      (outcome).detail << " [FAILED: " << text << "]";                     \
    }                                                                      \
  } while (0)

Matrix random_configuration(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> spread(0.0, 3.0);
  Matrix x(n, 1);
  for (int i = 0; i < n; ++i) x(i, 0) = spread(rng);
  return x;
}

// 1. Exhaustive batch-noise laws at N=4 (3 partitions) and N=6 (15 and 10).
Outcome criterion_exact_noise() {
  Outcome out;
  const Target target = Target::mixture1d();
  const Kernel kernel = svgd::make_gaussian_kernel(2.0, true);
  std::mt19937_64 rng(202);

  const std::vector<std::pair<int, int>> shapes{{4, 2}, {6, 2}, {6, 3}};
  for (const auto& [n, p] : shapes) {
    double worst_mean = 0.0;
    double worst_rel = 0.0;
    long partitions = 0;
    for (int c = 0; c < 10; ++c) {
      const Matrix x = random_configuration(n, rng);
      const auto stats = svgd::exhaustive_noise_stats(x, kernel, target, p);
      worst_mean = std::max(worst_mean, stats.max_abs_mean_component);
      worst_rel = std::max(worst_rel, stats.max_rel_second_moment_error);
      partitions = stats.partitions;
    }
    out.detail << " N=" << n << ",p=" << p << ": partitions=" << partitions
               << " mean=" << worst_mean << " relerr=" << worst_rel << ";";
    EXPECT(out, worst_mean <= 1e-12, "mean noise above 1e-12");
    EXPECT(out, worst_rel <= 1e-10, "second moment off by more than 1e-10");
  }
  return out;
}

// 2. Monte Carlo batch-noise laws at N=64 with mixture forces.
Outcome criterion_sampled_noise() {
  Outcome out;
  const Target target = Target::mixture1d();
  const Kernel kernel = svgd::make_gaussian_kernel(2.0, true);
  std::mt19937_64 config_rng(203);
  const Matrix x = random_configuration(64, config_rng);
  svgd::Rng draw_rng = svgd::make_stream(204, svgd::Stream::batching);

  for (int p : {2, 4, 8}) {
    const auto stats =
        svgd::monte_carlo_noise_stats(x, kernel, target, p, 100000, draw_rng);
    out.detail << " p=" << p << ": |mean|/se=" << stats.max_abs_mean_over_se
               << " relerr=" << stats.second_moment_rel_error << ";";
    EXPECT(out, stats.max_abs_mean_over_se <= 4.0,
           "noise mean beyond 4 standard errors");
    EXPECT(out, stats.second_moment_rel_error <= 0.02,
           "second moment off by more than 2%");
  }
  return out;
}

// 3. Incidence laws over a million sampled partitions.
Outcome criterion_incidence() {
  Outcome out;
  svgd::Rng rng = svgd::make_stream(205, svgd::Stream::batching);
  const long draws = 1000000;

  for (const auto& [n, p] : std::vector<std::pair<int, int>>{{10, 2}, {12, 4}}) {
    const auto stats = svgd::incidence_stats(n, p, draws, rng);
    const double rel = std::abs(stats.pair_frequency - stats.pair_probability) /
                       stats.pair_probability;
    out.detail << " pair(N=" << n << ",p=" << p << ") relerr=" << rel << ";";
    EXPECT(out, rel <= 0.01, "pair incidence off by more than 1%");
  }
  for (const auto& [n, p] : std::vector<std::pair<int, int>>{{12, 3}, {12, 4}}) {
    const auto stats = svgd::incidence_stats(n, p, draws, rng);
    const double rel =
        std::abs(stats.triple_frequency - stats.triple_probability) /
        stats.triple_probability;
    out.detail << " triple(N=" << n << ",p=" << p << ") relerr=" << rel << ";";
    EXPECT(out, rel <= 0.02, "triple incidence off by more than 2%");
  }
  return out;
}

RunConfig sampling_study_config() {
  RunConfig cfg;
  cfg.method = Method::svgd;
  cfg.n_particles = 256;
  cfg.iterations = 500;
  cfg.seed = 4000;
  cfg.kernel.bandwidth = 0.35;
  cfg.kernel.normalized = true;
  cfg.target.kind = "gaussian_mixture_1d";
  cfg.schedule.kind = "adagrad";
  cfg.schedule.eta0 = 0.2;
  cfg.schedule.epsilon = 1e-6;
  cfg.schedule.beta = 0.9;
  cfg.init.mean = -10.0;
  cfg.init.stddev = 1.0;
  cfg.report.snapshot_stride = 100;
  return cfg;
}

// 4. Sampling study: the full method hits the closed-form expectations and
//    the batch variants stay within a 3x MSE band.
Outcome criterion_sampling_study() {
  Outcome out;
  const auto report = compare(sampling_study_config(), {16, 32, 64}, 20);

  const svgd::GaussianMixture1D mix;
  const std::vector<double> truths{mix.mean(), mix.second_moment(),
                                   mix.expectation_cos2x()};
  const std::vector<double> bounds{0.15, 0.75, 0.15};
  const std::vector<std::string> names{"E[x]", "E[x^2]", "E[cos 2x]"};

  const auto& full = report.methods.front();
  EXPECT(out, full.failures == 0, "full-method blowups");
  for (int f = 0; f < 3; ++f) {
    const double gap = std::abs(full.final_mean[static_cast<std::size_t>(f)] -
                                truths[static_cast<std::size_t>(f)]);
    out.detail << " " << names[static_cast<std::size_t>(f)] << " gap=" << gap
               << ";";
    EXPECT(out, gap <= bounds[static_cast<std::size_t>(f)],
           names[static_cast<std::size_t>(f)] + " beyond tolerance");
  }
  for (std::size_t m = 1; m < report.methods.size(); ++m) {
    const auto& variant = report.methods[m];
    EXPECT(out, variant.failures == 0, variant.label + " blowups");
    for (int f = 0; f < 3; ++f) {
      const double ratio = variant.mse[static_cast<std::size_t>(f)] /
                           full.mse[static_cast<std::size_t>(f)];
      out.detail << " " << variant.label << " MSE" << names[static_cast<std::size_t>(f)]
                 << " ratio=" << ratio << ";";
      EXPECT(out, ratio <= 3.0, variant.label + " MSE more than 3x full");
    }
  }
  return out;
}

// 5. Order of the coupled deviation in the step size.
Outcome criterion_step_scaling() {
  Outcome out;
  RunConfig cfg;
  cfg.method = Method::rbm_partition;
  cfg.n_particles = 64;
  cfg.batch_size = 2;
  cfg.seed = 5000;
  cfg.kernel.bandwidth = 2.0;
  cfg.kernel.normalized = true;
  cfg.target.kind = "gaussian_mixture_1d";
  cfg.schedule.kind = "fixed";
  cfg.schedule.eta = 0.1;
  cfg.init.mean = -10.0;
  cfg.init.stddev = 1.0;

  const auto report =
      svgd::scaling_suite(cfg, {0.1, 0.05, 0.025, 0.0125}, 50, 1.0);
  out.detail << " slope=" << report.slope << " dev(0.1)="
             << report.cells.front().mean_squared_dev << " dev(0.0125)="
             << report.cells.back().mean_squared_dev << ";";
  for (const auto& cell : report.cells) {
    EXPECT(out, cell.failures == 0, "blowups in a scaling cell");
  }
  EXPECT(out, report.slope >= 0.7, "log-log slope below 0.7");
  EXPECT(out,
         report.cells.back().mean_squared_dev <
             report.cells.front().mean_squared_dev,
         "deviation did not shrink with the step");
  return out;
}

// 6. Per-iteration speedup of the p=2 batch method at N=1024.
Outcome criterion_speedup() {
  Outcome out;
  const auto report = svgd::bench_suite({1024}, {2}, 2, 100, 6000);
  double full_time = 0.0;
  double batch_time = 0.0;
  for (const auto& cell : report.cells) {
    if (cell.p == 0) full_time = cell.seconds_per_iteration;
    if (cell.p == 2) batch_time = cell.seconds_per_iteration;
  }
  const double ratio = batch_time / full_time;
  out.detail << " full=" << full_time << "s batch=" << batch_time
             << "s ratio=" << ratio << ";";
  EXPECT(out, full_time > 0.0 && batch_time > 0.0, "timing produced zeros");
  EXPECT(out, ratio <= 0.25, "batch iteration slower than a quarter of full");
  return out;
}

// 7. Bayesian logistic regression at desk scale: batch and full methods give
//    matching prediction power.
Outcome criterion_logistic_accuracy() {
  Outcome out;
  RunConfig cfg;
  cfg.method = Method::svgd;
  cfg.n_particles = 128;
  cfg.iterations = 1000;
  cfg.seed = 7000;
  cfg.kernel.bandwidth = 4.0;
  cfg.kernel.normalized = false;
  cfg.target.kind = "bayesian_logistic";
  cfg.target.synthetic = true;
  cfg.target.synthetic_data = {2000, 10, 5.0};
  cfg.target.data_seed = 11;
  cfg.target.minibatch = 100;
  cfg.schedule.kind = "adagrad";
  cfg.schedule.eta0 = 0.05;
  cfg.init.mean = 0.0;
  cfg.init.stddev = 1.0;
  cfg.report.snapshot_stride = 250;

  const auto report = compare(cfg, {8}, 10);
  const auto& full = report.methods[0];
  const auto& batched = report.methods[1];
  EXPECT(out, full.failures == 0 && batched.failures == 0, "blowups");
  const double acc_full = full.final_mean.empty() ? 0.0 : full.final_mean[0];
  const double acc_batch =
      batched.final_mean.empty() ? 0.0 : batched.final_mean[0];
  out.detail << " accuracy full=" << acc_full << " p=8=" << acc_batch << ";";
  EXPECT(out, std::abs(acc_full - acc_batch) <= 0.02,
         "batch accuracy differs from full by more than 0.02");
  EXPECT(out, acc_full >= 0.8, "full accuracy below 0.8");
  EXPECT(out, acc_batch >= 0.8, "batch accuracy below 0.8");
  return out;
}

// 8. Reduction (p = N) and replay determinism.
Outcome criterion_reduction_determinism() {
  Outcome out;
  RunConfig cfg;
  cfg.method = Method::svgd;
  cfg.n_particles = 64;
  cfg.iterations = 100;
  cfg.seed = 8000;
  cfg.kernel.bandwidth = 2.0;
  cfg.kernel.normalized = true;
  cfg.target.kind = "gaussian_mixture_1d";
  cfg.schedule.kind = "adagrad";
  cfg.schedule.eta0 = 0.2;
  cfg.init.mean = -10.0;
  cfg.init.stddev = 1.0;

  const auto full_a = svgd::run(cfg);
  const auto full_b = svgd::run(cfg);
  RunConfig batched = cfg;
  batched.method = Method::rbm_partition;
  batched.batch_size = cfg.n_particles;
  const auto reduced = svgd::run(batched);

  const bool replay_identical =
      (full_a.final_positions.array() == full_b.final_positions.array()).all();
  const bool reduction_identical =
      (full_a.final_positions.array() == reduced.final_positions.array()).all();
  out.detail << " replay_identical=" << replay_identical
             << " reduction_identical=" << reduction_identical << ";";
  EXPECT(out, replay_identical, "replay diverged");
  EXPECT(out, reduction_identical, "p=N run diverged from the full method");

  RunConfig replacement = batched;
  replacement.method = Method::rbm_replacement;
  const auto swept = svgd::run(replacement);
  const bool sweep_identical =
      (full_a.final_positions.array() == swept.final_positions.array()).all();
  out.detail << " sweep_identical=" << sweep_identical << ";";
  EXPECT(out, sweep_identical, "p=N sweep diverged from the full method");
  return out;
}

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> body;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--only") == 0 && a + 1 < argc) {
      only = std::atoi(argv[a + 1]);
    }
  }

  const std::vector<Criterion> criteria{
      {1, "exhaustive batch-noise laws", 5.0, criterion_exact_noise},
      {2, "sampled batch-noise laws", 60.0, criterion_sampled_noise},
      {3, "incidence laws", 60.0, criterion_incidence},
      {4, "mixture sampling study", 600.0, criterion_sampling_study},
      {5, "step-size scaling", 300.0, criterion_step_scaling},
      {6, "batch speedup", 300.0, criterion_speedup},
      {7, "logistic prediction power", 600.0, criterion_logistic_accuracy},
      {8, "reduction and determinism", 30.0, criterion_reduction_determinism},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (only != 0 && criterion.number != only) continue;
    const auto start = Clock::now();
    Outcome outcome = criterion.body();
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed >= criterion.budget_seconds) {
      outcome.pass = false;
      outcome.detail << " [FAILED: exceeded " << criterion.budget_seconds
                     << "s budget]";
    }
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << criterion.number
              << " (" << criterion.name << ", " << elapsed << "s):"
              << outcome.detail.str() << "\n";
    if (!outcome.pass) ++failures;
  }
  return failures;
}
