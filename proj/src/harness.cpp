#include "svgd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "svgd/metrics.hpp"

namespace svgd {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

StepSchedule make_schedule(const ScheduleConfig& cfg) {
  if (cfg.kind == "fixed") return StepSchedule::fixed(cfg.eta);
  return StepSchedule::adagrad(cfg.eta0, cfg.epsilon, cfg.beta);
}

std::vector<double> column_samples(const Matrix& positions) {
  std::vector<double> out(static_cast<std::size_t>(positions.rows()));
  for (Eigen::Index i = 0; i < positions.rows(); ++i) out[static_cast<std::size_t>(i)] = positions(i, 0);
  return out;
}

}  // namespace

Experiment build_experiment(const RunConfig& config) {
  config.validate();
  Experiment ex{Target::mixture1d(),
                make_gaussian_kernel(config.kernel.bandwidth,
                                     config.kernel.normalized),
                nullptr, 1};
  const auto& t = config.target;
  if (t.kind == "gaussian_mixture_1d") {
    ex.target = Target::mixture1d();
  } else if (t.kind == "custom_quadratic") {
    ex.target = Target::quadratic(t.dimension);
  } else {
    std::shared_ptr<Dataset> data;
    if (t.synthetic) {
      auto synthetic = make_synthetic_logistic(
          t.data_seed, t.synthetic_data.n, t.synthetic_data.d_f,
          t.synthetic_data.separation);
      data = std::make_shared<Dataset>(std::move(synthetic.data));
    } else {
      const auto format = t.data_format == "csv" ? DatasetFormat::csv
                                                 : DatasetFormat::libsvm_like;
      data = std::make_shared<Dataset>(
          load_dataset(t.data_path, format, LabelRemap{t.remap_12}));
      data->make_split(0.2, t.data_seed);
    }
    ex.data = data;
    ex.target = Target::logistic(ex.data, t.intercept);
    if (t.minibatch > 0) ex.target = ex.target.with_minibatch(t.minibatch);
  }
  ex.dimension = ex.target.dimension();
  return ex;
}

Matrix initial_ensemble(const RunConfig& config, int dimension) {
  Rng rng = make_stream(config.seed, Stream::init);
  std::normal_distribution<double> normal(config.init.mean, config.init.stddev);
  Matrix positions(config.n_particles, dimension);
  for (Eigen::Index i = 0; i < positions.rows(); ++i) {
    for (Eigen::Index j = 0; j < positions.cols(); ++j) {
      positions(i, j) = normal(rng);
    }
  }
  return positions;
}

RunResult run(const RunConfig& config) {
  const Experiment ex = build_experiment(config);
  return run_from(config, ex, initial_ensemble(config, ex.dimension));
}

RunResult run_from(const RunConfig& config, const Experiment& experiment,
                   const Matrix& initial) {
  config.validate();
  require(initial.rows() == config.n_particles &&
              initial.cols() == experiment.dimension,
          "initial ensemble shape does not match the config");

  RunResult result;
  result.config = config;

  Matrix positions = initial;
  Kernel kernel = experiment.kernel;
  StepSchedule schedule = make_schedule(config.schedule);
  Rng batch_rng = make_stream(config.seed, Stream::batching);
  Rng data_rng = make_stream(config.seed, Stream::minibatch);
  Rng* score_rng = experiment.target.stochastic() ? &data_rng : nullptr;

  std::vector<double> reference;
  if (config.report.w2_reference > 0) {
    Rng ref_rng = make_stream(config.seed, Stream::reference);
    const auto* mix = experiment.target.mixture();
    reference.resize(static_cast<std::size_t>(config.report.w2_reference));
    for (auto& v : reference) v = mix->sample(ref_rng);
  }

  const bool one_dimensional = experiment.dimension == 1;
  const bool classified = experiment.data && experiment.data->split.has_value();

  const auto started = Clock::now();
  auto record = [&](int iteration) {
    Snapshot s;
    s.iteration = iteration;
    s.elapsed_seconds = seconds_since(started);
    if (one_dimensional) {
      s.moments = {empirical_expectation(positions, TestFunction::identity()),
                   empirical_expectation(positions, TestFunction::square()),
                   empirical_expectation(positions, TestFunction::cos2x())};
      if (!reference.empty()) {
        s.w2_reference = w2_empirical_1d(column_samples(positions), reference);
      }
    }
    if (classified) {
      s.accuracy = classification_accuracy(positions, *experiment.data,
                                           config.target.intercept);
    }
    result.snapshots.push_back(std::move(s));
  };

  record(0);
  const int stride = config.report.snapshot_stride;
  try {
    for (int k = 0; k < config.iterations; ++k) {
      if (config.kernel.dynamic_bandwidth) {
        kernel = with_bandwidth(kernel, median_bandwidth(positions).value);
      }
      switch (config.method) {
        case Method::svgd: {
          const Matrix drift =
              full_drift(positions, kernel, experiment.target, score_rng);
          apply_displacement(positions, schedule.apply(drift), k);
          break;
        }
        case Method::rbm_partition: {
          const auto partition =
              random_partition(config.n_particles, config.batch_size, batch_rng);
          const Matrix drift = batch_drift(positions, kernel, experiment.target,
                                           partition, score_rng);
          apply_displacement(positions, schedule.apply(drift), k);
          break;
        }
        case Method::rbm_replacement: {
          positions = replacement_sweep(
              positions, kernel, experiment.target, config.batch_size,
              [&schedule](const Matrix& field) { return schedule.apply(field); },
              batch_rng, score_rng);
          break;
        }
      }
      result.completed_iterations = k + 1;
      const bool last = k + 1 == config.iterations;
      if (last || (stride > 0 && (k + 1) % stride == 0)) record(k + 1);
    }
  } catch (const BlowupError& e) {
    result.failed = true;
    result.failure = e.what();
  }

  result.total_seconds = seconds_since(started);
  result.mean_iteration_seconds =
      result.completed_iterations > 0
          ? result.total_seconds / result.completed_iterations
          : 0.0;
  result.final_positions = positions;

  if (config.report.kde && one_dimensional) {
    KdeTrace trace;
    const int points = config.report.kde_points;
    trace.grid.resize(static_cast<std::size_t>(points));
    const double span = config.report.kde_max - config.report.kde_min;
    for (int g = 0; g < points; ++g) {
      trace.grid[static_cast<std::size_t>(g)] =
          config.report.kde_min + span * g / (points - 1);
    }
    const auto samples = column_samples(positions);
    const double bandwidth = config.report.kde_bandwidth > 0.0
                                 ? config.report.kde_bandwidth
                                 : silverman_bandwidth(samples);
    trace.density = kde_curve(samples, bandwidth, trace.grid);
    result.kde = std::move(trace);
  }

  if (!config.out_dir.empty()) write_run_artifacts(result, config.out_dir);
  return result;
}

// ---------------------------------------------------------------------------

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2,
          "slope fit needs matched samples");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, "slope fit needs positive values");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CompareReport compare(const RunConfig& base, const std::vector<int>& batch_sizes,
                      int runs) {
  require(runs >= 1, "compare needs at least one run");
  RunConfig proto = base;
  if (proto.report.snapshot_stride == 0) {
    proto.report.snapshot_stride = std::max(1, proto.iterations / 5);
  }
  proto.out_dir.clear();

  const Experiment ex = build_experiment(proto);
  const bool mixture = ex.target.mixture() != nullptr;

  CompareReport report;
  report.runs = runs;
  report.primary_metric = mixture ? "E[x]" : "accuracy";

  struct Variant {
    RunConfig config;
    std::string label;
    std::vector<std::vector<double>> finals;  // per-run final metrics
    std::vector<std::vector<double>> series;  // per-run checkpoint metric
    double runtime = 0.0;
    int failures = 0;
  };

  std::vector<Variant> variants;
  {
    RunConfig c = proto;
    c.method = Method::svgd;
    c.batch_size = 0;
    variants.push_back({c, "svgd", {}, {}, 0.0, 0});
  }
  for (int p : batch_sizes) {
    RunConfig c = proto;
    c.method = Method::rbm_partition;
    c.batch_size = p;
    variants.push_back({c, "rbm p=" + std::to_string(p), {}, {}, 0.0, 0});
  }
  for (auto& v : variants) v.config.validate();

  for (int r = 1; r <= runs; ++r) {
    RunConfig seeded = proto;
    seeded.seed = proto.seed + static_cast<std::uint64_t>(r);
    const Matrix shared_init = initial_ensemble(seeded, ex.dimension);
    for (auto& v : variants) {
      RunConfig c = v.config;
      c.seed = seeded.seed;
      const RunResult res = run_from(c, ex, shared_init);
      if (res.failed) {
        ++v.failures;
        continue;
      }
      v.runtime += res.total_seconds;
      if (mixture) {
        v.finals.push_back(res.snapshots.back().moments);
      } else {
        v.finals.push_back({res.snapshots.back().accuracy.value_or(0.0)});
      }
      std::vector<double> series;
      for (const auto& s : res.snapshots) {
        if (s.iteration == 0) continue;
        series.push_back(mixture ? s.moments[0] : s.accuracy.value_or(0.0));
      }
      v.series.push_back(std::move(series));
      if (report.checkpoints.empty()) {
        for (const auto& s : res.snapshots) {
          if (s.iteration > 0) report.checkpoints.push_back(s.iteration);
        }
      }
    }
  }

  const GaussianMixture1D mix_params;
  const std::vector<double> truths = {mix_params.mean(),
                                      mix_params.second_moment(),
                                      mix_params.expectation_cos2x()};

  double full_runtime = 0.0;
  for (auto& v : variants) {
    MethodAggregate agg;
    agg.label = v.label;
    agg.method = v.config.method;
    agg.batch_size = v.config.method == Method::svgd ? 0 : v.config.batch_size;
    agg.failures = v.failures;
    const int completed = static_cast<int>(v.finals.size());
    if (completed > 0) {
      agg.mean_runtime_seconds = v.runtime / completed;
      agg.final_mean.assign(v.finals.front().size(), 0.0);
      for (const auto& fin : v.finals) {
        for (std::size_t f = 0; f < fin.size(); ++f) agg.final_mean[f] += fin[f];
      }
      for (auto& f : agg.final_mean) f /= completed;
      if (mixture) {
        for (std::size_t f = 0; f < truths.size(); ++f) {
          std::vector<double> estimates;
          estimates.reserve(v.finals.size());
          for (const auto& fin : v.finals) estimates.push_back(fin[f]);
          agg.mse.push_back(mse_over_runs(estimates, truths[f]));
        }
      }
      const std::size_t points = report.checkpoints.size();
      agg.checkpoint_mean.assign(points, 0.0);
      agg.checkpoint_std.assign(points, 0.0);
      for (const auto& series : v.series) {
        for (std::size_t c = 0; c < points && c < series.size(); ++c) {
          agg.checkpoint_mean[c] += series[c];
        }
      }
      for (auto& m : agg.checkpoint_mean) m /= completed;
      for (const auto& series : v.series) {
        for (std::size_t c = 0; c < points && c < series.size(); ++c) {
          const double d = series[c] - agg.checkpoint_mean[c];
          agg.checkpoint_std[c] += d * d;
        }
      }
      for (auto& s : agg.checkpoint_std) {
        s = completed > 1 ? std::sqrt(s / (completed - 1)) : 0.0;
      }
    }
    if (v.config.method == Method::svgd) {
      full_runtime = agg.mean_runtime_seconds;
    }
    agg.speedup = agg.mean_runtime_seconds > 0.0
                      ? full_runtime / agg.mean_runtime_seconds
                      : 0.0;
    report.methods.push_back(std::move(agg));
  }
  return report;
}

std::string compare_table(const CompareReport& report) {
  std::ostringstream out;
  out << std::setprecision(4);
  out << "runs per method: " << report.runs << "\n\n";
  if (!report.methods.empty() && !report.methods.front().mse.empty()) {
    out << std::left << std::setw(14) << "method" << std::right
        << std::setw(13) << "MSE[x]" << std::setw(13) << "MSE[x^2]"
        << std::setw(13) << "MSE[cos 2x]" << std::setw(12) << "time(s)"
        << std::setw(10) << "speedup" << "\n";
    for (const auto& m : report.methods) {
      out << std::left << std::setw(14) << m.label << std::right;
      for (double v : m.mse) out << std::setw(13) << v;
      out << std::setw(12) << m.mean_runtime_seconds << std::setw(10)
          << m.speedup << "\n";
    }
    out << "\n";
  }
  out << report.primary_metric << " by iteration (mean / std over runs)\n";
  out << std::left << std::setw(14) << "method" << std::right;
  for (int c : report.checkpoints) out << std::setw(18) << c;
  out << "\n";
  for (const auto& m : report.methods) {
    out << std::left << std::setw(14) << m.label << std::right;
    for (std::size_t c = 0; c < m.checkpoint_mean.size(); ++c) {
      std::ostringstream cell;
      cell << std::setprecision(4) << m.checkpoint_mean[c] << "/"
           << std::setprecision(2) << m.checkpoint_std[c];
      out << std::setw(18) << cell.str();
    }
    if (m.failures > 0) out << "  failures=" << m.failures;
    out << "\n";
  }
  return out.str();
}

std::string compare_to_json_text(const CompareReport& report) {
  json j;
  j["runs"] = report.runs;
  j["primary_metric"] = report.primary_metric;
  j["checkpoints"] = report.checkpoints;
  j["methods"] = json::array();
  for (const auto& m : report.methods) {
    json jm;
    jm["label"] = m.label;
    jm["method"] = method_name(m.method);
    jm["batch_size"] = m.batch_size;
    jm["mse"] = m.mse;
    jm["final_mean"] = m.final_mean;
    jm["checkpoint_mean"] = m.checkpoint_mean;
    jm["checkpoint_std"] = m.checkpoint_std;
    jm["mean_runtime_seconds"] = m.mean_runtime_seconds;
    jm["speedup"] = m.speedup;
    jm["failures"] = m.failures;
    j["methods"].push_back(std::move(jm));
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

ExhaustiveNoiseStats exhaustive_noise_stats(const Matrix& positions,
                                            const Kernel& kernel,
                                            const Target& target, int p) {
  const int n = static_cast<int>(positions.rows());
  const auto partitions = enumerate_partitions(n, p);
  ExhaustiveNoiseStats stats;
  stats.partitions = static_cast<long>(partitions.size());

  for (int i = 0; i < n; ++i) {
    Vector mean = Vector::Zero(positions.cols());
    double mean_sq = 0.0;
    for (const auto& partition : partitions) {
      const Vector noise = batch_noise(positions, kernel, target, partition, i);
      mean += noise;
      mean_sq += noise.squaredNorm();
    }
    mean /= static_cast<double>(partitions.size());
    mean_sq /= static_cast<double>(partitions.size());

    stats.max_abs_mean_component =
        std::max(stats.max_abs_mean_component, mean.cwiseAbs().maxCoeff());
    const double predicted =
        batch_noise_second_moment(positions, kernel, target, i, p);
    const double scale = std::max(std::abs(predicted), 1e-300);
    stats.max_rel_second_moment_error = std::max(
        stats.max_rel_second_moment_error, std::abs(mean_sq - predicted) / scale);
  }
  return stats;
}

MonteCarloNoiseStats monte_carlo_noise_stats(const Matrix& positions,
                                             const Kernel& kernel,
                                             const Target& target, int p,
                                             long draws, Rng& rng,
                                             int particle) {
  require(draws >= 2, "need at least two draws");
  const int n = static_cast<int>(positions.rows());
  const int d = static_cast<int>(positions.cols());

  MonteCarloNoiseStats stats;
  stats.draws = draws;
  stats.predicted_squared =
      batch_noise_second_moment(positions, kernel, target, particle, p);

  Vector sum = Vector::Zero(d);
  Vector sum_sq = Vector::Zero(d);
  double norm_sum = 0.0;
  for (long t = 0; t < draws; ++t) {
    const auto partition = random_partition(n, p, rng);
    const Vector noise =
        batch_noise(positions, kernel, target, partition, particle);
    sum += noise;
    sum_sq += noise.cwiseAbs2();
    norm_sum += noise.squaredNorm();
  }
  const double m = static_cast<double>(draws);
  for (int c = 0; c < d; ++c) {
    const double mean = sum(c) / m;
    const double var = std::max(sum_sq(c) / m - mean * mean, 0.0);
    const double se = std::sqrt(var / m);
    if (se > 0.0) {
      stats.max_abs_mean_over_se =
          std::max(stats.max_abs_mean_over_se, std::abs(mean) / se);
    }
  }
  stats.mean_squared = norm_sum / m;
  const double scale = std::max(std::abs(stats.predicted_squared), 1e-300);
  stats.second_moment_rel_error =
      std::abs(stats.mean_squared - stats.predicted_squared) / scale;
  return stats;
}

IncidenceStats incidence_stats(int n, int p, long draws, Rng& rng) {
  require(n >= 3, "incidence laws need n >= 3");
  IncidenceStats stats;
  stats.draws = draws;
  stats.pair_probability = pair_incidence_probability(n, p);
  stats.triple_probability = triple_incidence_probability(n, p);
  long pair_hits = 0;
  long triple_hits = 0;
  for (long t = 0; t < draws; ++t) {
    const auto partition = random_partition(n, p, rng);
    const bool pair = partition.shared(0, 1);
    if (pair) ++pair_hits;
    if (pair && partition.shared(1, 2)) ++triple_hits;
  }
  stats.pair_frequency = static_cast<double>(pair_hits) / draws;
  stats.triple_frequency = static_cast<double>(triple_hits) / draws;
  return stats;
}

namespace {

double partition_count_estimate(int n, int p) {
  // n! / ((p!)^(n/p) (n/p)!) in log space
  double value = std::lgamma(n + 1.0) - (n / p) * std::lgamma(p + 1.0) -
                 std::lgamma(n / static_cast<double>(p) + 1.0);
  return std::exp(value);
}

}  // namespace

ConsistencyReport consistency_suite(int n, const std::vector<int>& batch_sizes,
                                    long trials, std::uint64_t seed) {
  require(n >= 3, "consistency suite needs n >= 3");
  ConsistencyReport report;
  const Target target = Target::mixture1d();
  const Kernel kernel = make_gaussian_kernel(2.0, true);
  Rng rng = make_stream(seed, Stream::scratch);
  std::normal_distribution<double> spread(0.0, 3.0);

  auto push = [&report](ConsistencyCheck check) {
    report.all_pass = report.all_pass && check.pass;
    report.checks.push_back(std::move(check));
  };

  for (int p : batch_sizes) {
    require(p >= 2 && p <= n, "batch size must satisfy 2 <= p <= n");
    const std::string tag = "N=" + std::to_string(n) + " p=" + std::to_string(p);

    if (n % p == 0 && partition_count_estimate(n, p) <= 2e4) {
      double worst_mean = 0.0;
      double worst_rel = 0.0;
      for (int c = 0; c < 10; ++c) {
        Matrix positions(n, 1);
        for (int i = 0; i < n; ++i) positions(i, 0) = spread(rng);
        const auto stats = exhaustive_noise_stats(positions, kernel, target, p);
        worst_mean = std::max(worst_mean, stats.max_abs_mean_component);
        worst_rel = std::max(worst_rel, stats.max_rel_second_moment_error);
      }
      push({tag + " exhaustive zero mean", worst_mean, 1e-12,
            worst_mean <= 1e-12, "max |mean noise| over 10 configurations"});
      push({tag + " exhaustive second moment", worst_rel, 1e-10,
            worst_rel <= 1e-10, "max relative error over 10 configurations"});
    }

    if (n % p == 0) {
      Matrix positions(n, 1);
      for (int i = 0; i < n; ++i) positions(i, 0) = spread(rng);
      const auto mc =
          monte_carlo_noise_stats(positions, kernel, target, p, trials, rng);
      push({tag + " sampled zero mean", mc.max_abs_mean_over_se, 4.0,
            mc.max_abs_mean_over_se <= 4.0, "|mean| / standard error"});
      push({tag + " sampled second moment", mc.second_moment_rel_error, 0.02,
            mc.second_moment_rel_error <= 0.02,
            "relative error vs closed form"});

      const auto inc = incidence_stats(n, p, trials, rng);
      const double pair_rel =
          std::abs(inc.pair_frequency - inc.pair_probability) /
          inc.pair_probability;
      push({tag + " pair incidence", pair_rel, 0.01, pair_rel <= 0.01,
            "relative error vs (p-1)/(N-1)"});
      if (p >= 3) {
        const double triple_rel =
            std::abs(inc.triple_frequency - inc.triple_probability) /
            inc.triple_probability;
        push({tag + " triple incidence", triple_rel, 0.02, triple_rel <= 0.02,
              "relative error vs (p-1)(p-2)/((N-1)(N-2))"});
      } else {
        push({tag + " triple incidence", inc.triple_frequency, 0.0,
              inc.triple_frequency == 0.0, "pairs never hold three indices"});
      }
    }
  }
  return report;
}

std::string consistency_table(const ConsistencyReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(38)
        << c.name << std::right << "  measured " << std::setprecision(4)
        << std::scientific << c.measured << "  tolerance " << c.tolerance
        << std::defaultfloat << "  (" << c.detail << ")\n";
  }
  out << (report.all_pass ? "all checks passed" : "CHECK FAILURES PRESENT")
      << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------

ScalingReport scaling_suite(const RunConfig& base,
                            const std::vector<double>& etas, int seeds,
                            double horizon) {
  require(!etas.empty(), "scaling suite needs step sizes");
  require(seeds >= 1, "scaling suite needs seeds");
  require(horizon > 0.0, "scaling suite needs a positive horizon");
  for (std::size_t i = 1; i < etas.size(); ++i) {
    require(etas[i] < etas[i - 1], "step sizes must decrease strictly");
  }

  RunConfig proto = base;
  proto.method = Method::rbm_partition;
  proto.schedule.kind = "fixed";
  proto.report.snapshot_stride = 0;
  proto.report.w2_reference = 0;
  proto.report.kde = false;
  proto.out_dir.clear();
  const Experiment ex = build_experiment(proto);

  ScalingReport report;
  for (double eta : etas) {
    ScalingCell cell;
    cell.eta = eta;
    cell.steps = std::max(1, static_cast<int>(std::lround(horizon / eta)));

    double total = 0.0;
    int completed = 0;
    for (int s = 1; s <= seeds; ++s) {
      RunConfig runner = proto;
      runner.seed = proto.seed + static_cast<std::uint64_t>(s);
      runner.iterations = cell.steps;
      runner.schedule.eta = eta;
      const Matrix shared_init = initial_ensemble(runner, ex.dimension);

      RunConfig full = runner;
      full.method = Method::svgd;
      full.batch_size = 0;
      const RunResult exact = run_from(full, ex, shared_init);
      const RunResult batched = run_from(runner, ex, shared_init);
      if (exact.failed || batched.failed) {
        ++cell.failures;
        continue;
      }
      total += mean_squared_deviation(exact.final_positions,
                                      batched.final_positions);
      ++completed;
    }
    cell.mean_squared_dev = completed > 0 ? total / completed : 0.0;
    report.cells.push_back(cell);
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& cell : report.cells) {
    if (cell.mean_squared_dev > 0.0) {
      xs.push_back(cell.eta);
      ys.push_back(cell.mean_squared_dev);
    }
  }
  report.slope = xs.size() >= 2 ? loglog_slope(xs, ys) : 0.0;
  for (std::size_t i = 1; i < report.cells.size(); ++i) {
    if (report.cells[i].mean_squared_dev >
        report.cells[i - 1].mean_squared_dev) {
      report.monotone_non_increasing = false;
    }
  }
  return report;
}

std::string scaling_table(const ScalingReport& report) {
  std::ostringstream out;
  out << std::setw(10) << "eta" << std::setw(8) << "steps" << std::setw(16)
      << "mean sq dev" << std::setw(10) << "failures" << "\n";
  for (const auto& c : report.cells) {
    out << std::setw(10) << c.eta << std::setw(8) << c.steps << std::setw(16)
        << std::setprecision(5) << std::scientific << c.mean_squared_dev
        << std::defaultfloat << std::setw(10) << c.failures << "\n";
  }
  out << "log-log slope: " << std::setprecision(4) << report.slope << "\n";
  out << "monotone non-increasing: "
      << (report.monotone_non_increasing ? "yes" : "no") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------

BenchReport bench_suite(const std::vector<int>& particle_counts,
                        const std::vector<int>& batch_sizes, int dimension,
                        int iterations, std::uint64_t seed) {
  require(iterations >= 1, "bench suite needs iterations");
  require(dimension >= 1, "bench suite needs a dimension");

  BenchReport report;
  report.dimension = dimension;
  report.iterations = iterations;

  const Target target = Target::quadratic(dimension);
  const Kernel kernel = make_gaussian_kernel(1.0, false);
  constexpr double kStep = 1e-3;
  constexpr int kWarmup = 3;

  auto time_method = [&](int n, int p) {
    Rng init_rng = make_stream(seed, Stream::init);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix positions(n, dimension);
    for (Eigen::Index i = 0; i < positions.rows(); ++i) {
      for (Eigen::Index j = 0; j < positions.cols(); ++j) {
        positions(i, j) = normal(init_rng);
      }
    }
    Rng batch_rng = make_stream(seed, Stream::batching);

    auto step_once = [&]() {
      if (p == 0) {
        positions = svgd_step(positions, kernel, target, kStep);
      } else {
        positions = rbm_step(positions, kernel, target, p, kStep, batch_rng);
      }
    };
    for (int w = 0; w < kWarmup; ++w) step_once();

    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(iterations));
    for (int k = 0; k < iterations; ++k) {
      const auto tick = Clock::now();
      step_once();
      samples.push_back(seconds_since(tick));
    }
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= iterations;
    double var = 0.0;
    for (double v : samples) var += (v - mean) * (v - mean);
    var = iterations > 1 ? var / (iterations - 1) : 0.0;
    BenchCell cell;
    cell.n = n;
    cell.p = p;
    cell.seconds_per_iteration = mean;
    cell.coefficient_of_variation = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
    return cell;
  };

  for (int n : particle_counts) {
    report.cells.push_back(time_method(n, 0));
    for (int p : batch_sizes) {
      if (p >= 2 && p <= n) report.cells.push_back(time_method(n, p));
    }
  }
  return report;
}

std::string bench_table(const BenchReport& report) {
  std::ostringstream out;
  out << "d=" << report.dimension << ", " << report.iterations
      << " timed iterations per cell\n";
  out << std::setw(8) << "N" << std::setw(10) << "method" << std::setw(16)
      << "s/iteration" << std::setw(10) << "cv" << "\n";
  for (const auto& c : report.cells) {
    out << std::setw(8) << c.n << std::setw(10)
        << (c.p == 0 ? std::string("full") : "p=" + std::to_string(c.p))
        << std::setw(16) << std::setprecision(4) << std::scientific
        << c.seconds_per_iteration << std::defaultfloat << std::setw(10)
        << std::setprecision(3) << c.coefficient_of_variation << "\n";
  }
  return out.str();
}

}  // namespace svgd
