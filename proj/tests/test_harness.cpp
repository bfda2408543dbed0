#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "support.hpp"
#include "svgd/harness.hpp"

using svgd::compare;
using svgd::consistency_suite;
using svgd::Method;
using svgd::RunConfig;
using svgd::RunResult;
using svgd::scaling_suite;

namespace {

RunConfig mixture_config() {
  RunConfig cfg;
  cfg.method = Method::svgd;
  cfg.n_particles = 32;
  cfg.iterations = 60;
  cfg.seed = 5;
  cfg.kernel.bandwidth = 2.0;
  cfg.kernel.normalized = true;
  cfg.target.kind = "gaussian_mixture_1d";
  cfg.schedule.kind = "adagrad";
  cfg.schedule.eta0 = 0.2;
  cfg.init.mean = -10.0;
  cfg.init.stddev = 1.0;
  return cfg;
}

RunConfig logistic_config() {
  RunConfig cfg;
  cfg.method = Method::svgd;
  cfg.n_particles = 16;
  cfg.iterations = 60;
  cfg.seed = 5;
  cfg.kernel.bandwidth = 2.0;
  cfg.kernel.normalized = false;
  cfg.target.kind = "bayesian_logistic";
  cfg.target.synthetic = true;
  cfg.target.synthetic_data = {400, 4, 4.0};
  cfg.target.data_seed = 9;
  cfg.target.minibatch = 50;
  cfg.schedule.kind = "adagrad";
  cfg.schedule.eta0 = 0.05;
  return cfg;
}

}  // namespace

TEST_CASE("zero iterations leave only the initial snapshot") {
  RunConfig cfg = mixture_config();
  cfg.iterations = 0;
  const RunResult result = svgd::run(cfg);
  REQUIRE(result.snapshots.size() == 1);
  CHECK(result.snapshots[0].iteration == 0);
  CHECK(result.completed_iterations == 0);
  CHECK_FALSE(result.failed);
}

TEST_CASE("identical configs replay identical trajectories") {
  const RunConfig cfg = mixture_config();
  const RunResult a = svgd::run(cfg);
  const RunResult b = svgd::run(cfg);
  CHECK(oracle::same_bits(a.final_positions, b.final_positions));
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    CHECK(a.snapshots[i].iteration == b.snapshots[i].iteration);
    CHECK(a.snapshots[i].moments == b.snapshots[i].moments);
  }
}

TEST_CASE("the snapshot stride cannot perturb the trajectory") {
  RunConfig dense = mixture_config();
  dense.report.snapshot_stride = 7;
  RunConfig sparse = mixture_config();
  sparse.report.snapshot_stride = 50;
  const RunResult a = svgd::run(dense);
  const RunResult b = svgd::run(sparse);
  CHECK(oracle::same_bits(a.final_positions, b.final_positions));

  // report-only consumers draw from their own stream
  RunConfig tracked = mixture_config();
  tracked.report.w2_reference = tracked.n_particles;
  const RunResult c = svgd::run(tracked);
  CHECK(oracle::same_bits(a.final_positions, c.final_positions));
}

TEST_CASE("whole-ensemble batches reproduce the full method") {
  RunConfig full = mixture_config();
  RunConfig batched = mixture_config();
  batched.method = Method::rbm_partition;
  batched.batch_size = batched.n_particles;
  const RunResult a = svgd::run(full);
  const RunResult b = svgd::run(batched);
  CHECK(oracle::same_bits(a.final_positions, b.final_positions));
}

TEST_CASE("config echo round-trips through json") {
  RunConfig cfg = mixture_config();
  cfg.report.snapshot_stride = 20;
  const std::string text = svgd::config_to_json_text(cfg);
  const RunConfig parsed = svgd::config_from_json_text(text);
  const RunResult a = svgd::run(cfg);
  const RunResult b = svgd::run(parsed);
  CHECK(oracle::same_bits(a.final_positions, b.final_positions));
  CHECK(svgd::config_to_json_text(parsed) == text);
}

TEST_CASE("run artifacts land on disk and replay") {
  const auto dir = std::filesystem::temp_directory_path() / "svgd_run_artifacts";
  std::filesystem::remove_all(dir);
  RunConfig cfg = mixture_config();
  cfg.iterations = 10;
  cfg.report.snapshot_stride = 5;
  cfg.report.kde = true;
  cfg.report.kde_points = 64;
  cfg.out_dir = dir.string();
  const RunResult result = svgd::run(cfg);

  CHECK(std::filesystem::exists(dir / "config.json"));
  CHECK(std::filesystem::exists(dir / "snapshots.jsonl"));
  CHECK(std::filesystem::exists(dir / "summary.txt"));
  CHECK(std::filesystem::exists(dir / "ensemble.txt"));
  CHECK(std::filesystem::exists(dir / "kde.txt"));

  const RunConfig parsed = svgd::load_config((dir / "config.json").string());
  const RunResult replay = svgd::run(parsed);
  CHECK(oracle::same_bits(result.final_positions, replay.final_positions));

  std::ifstream ensemble(dir / "ensemble.txt");
  int lines = 0;
  std::string line;
  while (std::getline(ensemble, line)) {
    if (!line.empty()) ++lines;
  }
  CHECK(lines == cfg.n_particles);
  std::filesystem::remove_all(dir);
}

TEST_CASE("w2 tracking against exact draws") {
  RunConfig cfg = mixture_config();
  cfg.iterations = 120;
  cfg.report.w2_reference = cfg.n_particles;
  const RunResult result = svgd::run(cfg);
  REQUIRE(result.snapshots.back().w2_reference.has_value());
  const double start = *result.snapshots.front().w2_reference;
  const double finish = *result.snapshots.back().w2_reference;
  CHECK(std::isfinite(finish));
  CHECK(finish < start);  // transported toward the target
}

TEST_CASE("blowups produce a partial report") {
  RunConfig cfg;
  cfg.method = Method::svgd;
  cfg.n_particles = 4;
  cfg.iterations = 50;
  cfg.seed = 2;
  cfg.kernel.bandwidth = 1.0;
  cfg.kernel.normalized = false;
  cfg.target.kind = "custom_quadratic";
  cfg.target.dimension = 1;
  cfg.schedule.kind = "fixed";
  cfg.schedule.eta = 1e155;
  cfg.init.mean = 1.0;
  const RunResult result = svgd::run(cfg);
  CHECK(result.failed);
  CHECK(result.failure.find("particle") != std::string::npos);
  CHECK_FALSE(result.snapshots.empty());
  CHECK(result.completed_iterations < cfg.iterations);
}

TEST_CASE("malformed config text is rejected") {
  CHECK_THROWS_AS(svgd::config_from_json_text("not json"), svgd::ParseError);
  CHECK_THROWS_AS(svgd::config_from_json_text("{\"n_particles\": \"many\"}"),
                  svgd::ParseError);
  CHECK_THROWS_AS(svgd::config_from_json_text("{\"method\": \"warp\"}"),
                  svgd::ParseError);
}

TEST_CASE("invalid configs are rejected before running") {
  RunConfig cfg = mixture_config();
  cfg.method = Method::rbm_partition;
  cfg.batch_size = 1;
  CHECK_THROWS_AS(svgd::run(cfg), std::invalid_argument);

  RunConfig dynamic = mixture_config();
  dynamic.method = Method::rbm_partition;
  dynamic.batch_size = 4;
  dynamic.kernel.dynamic_bandwidth = true;
  CHECK_THROWS_AS(svgd::run(dynamic), std::invalid_argument);

  RunConfig w2 = mixture_config();
  w2.report.w2_reference = 7;  // != n_particles
  CHECK_THROWS_AS(svgd::run(w2), std::invalid_argument);
}

TEST_CASE("dynamic bandwidth runs converge comparably") {
  RunConfig cfg = mixture_config();
  cfg.kernel.dynamic_bandwidth = true;
  cfg.iterations = 120;
  const RunResult result = svgd::run(cfg);
  CHECK_FALSE(result.failed);
  CHECK(std::abs(result.snapshots.back().moments[0]) < 4.0);
}

TEST_CASE("compare degenerates to the full method at p = N") {
  RunConfig cfg = mixture_config();
  cfg.iterations = 30;
  const auto report = compare(cfg, {cfg.n_particles}, 1);
  REQUIRE(report.methods.size() == 2);
  REQUIRE(report.methods[0].mse.size() == 3);
  for (std::size_t f = 0; f < 3; ++f) {
    CHECK(report.methods[0].mse[f] == report.methods[1].mse[f]);
  }
  CHECK(report.methods[0].speedup == 1.0);
  CHECK(report.runs == 1);
}

TEST_CASE("compare aggregates accuracies for the logistic study") {
  RunConfig cfg = logistic_config();
  cfg.iterations = 40;
  cfg.report.snapshot_stride = 20;
  const auto report = compare(cfg, {4}, 2);
  REQUIRE(report.methods.size() == 2);
  CHECK(report.primary_metric == "accuracy");
  CHECK(report.checkpoints == std::vector<int>{20, 40});
  for (const auto& m : report.methods) {
    CHECK(m.failures == 0);
    REQUIRE(m.final_mean.size() == 1);
    CHECK(m.final_mean[0] > 0.4);
    CHECK(m.final_mean[0] <= 1.0);
    REQUIRE(m.checkpoint_mean.size() == 2);
  }
  const std::string table = svgd::compare_table(report);
  CHECK(table.find("accuracy") != std::string::npos);
  CHECK(table.find("rbm p=4") != std::string::npos);
}

TEST_CASE("consistency suite passes its own checks") {
  const auto report = consistency_suite(6, {2, 3}, 50000, 77);
  CHECK(report.all_pass);
  // exhaustive + sampled + incidence rows for each batch size
  CHECK(report.checks.size() == 12);
  const std::string table = svgd::consistency_table(report);
  CHECK(table.find("PASS") != std::string::npos);
}

TEST_CASE("scaling suite sees smaller deviations at smaller steps") {
  RunConfig cfg = mixture_config();
  cfg.n_particles = 16;
  cfg.batch_size = 2;
  const auto report = scaling_suite(cfg, {0.1, 0.025}, 8, 0.5);
  REQUIRE(report.cells.size() == 2);
  CHECK(report.cells[0].steps == 5);
  CHECK(report.cells[1].steps == 20);
  CHECK(report.cells[0].mean_squared_dev > 0.0);
  CHECK(report.cells[1].mean_squared_dev < report.cells[0].mean_squared_dev);
  CHECK(report.slope > 0.0);
  // a 4x step ratio shrinks the deviation by roughly 4x
  const double ratio =
      report.cells[0].mean_squared_dev / report.cells[1].mean_squared_dev;
  CHECK(ratio >= 4.0 / 1.6);
  CHECK(ratio <= 4.0 * 1.6);
}

TEST_CASE("scaling suite reports zero deviation at p = N") {
  RunConfig cfg = mixture_config();
  cfg.n_particles = 16;
  cfg.batch_size = 16;
  const auto report = scaling_suite(cfg, {0.1, 0.05}, 3, 0.5);
  for (const auto& cell : report.cells) {
    CHECK(cell.mean_squared_dev == 0.0);
  }
}

TEST_CASE("bench suite fills cells") {
  const auto report = svgd::bench_suite({64}, {2, 8}, 2, 10, 3);
  REQUIRE(report.cells.size() == 3);
  for (const auto& cell : report.cells) {
    CHECK(cell.seconds_per_iteration > 0.0);
  }
  CHECK(report.cells[0].p == 0);
}

TEST_CASE("batch iteration cost grows roughly linearly in N") {
  const auto report = svgd::bench_suite({512, 1024}, {2}, 2, 50, 3);
  double small = 0.0, large = 0.0;
  for (const auto& cell : report.cells) {
    if (cell.p == 2 && cell.n == 512) small = cell.seconds_per_iteration;
    if (cell.p == 2 && cell.n == 1024) large = cell.seconds_per_iteration;
  }
  REQUIRE(small > 0.0);
  const double growth = large / small;
  CHECK(growth >= 1.5);
  CHECK(growth <= 3.0);
}

TEST_CASE("replacement sweeps run end to end") {
  RunConfig cfg = mixture_config();
  cfg.method = Method::rbm_replacement;
  cfg.batch_size = 8;
  cfg.iterations = 40;
  const RunResult result = svgd::run(cfg);
  CHECK_FALSE(result.failed);
  CHECK(result.final_positions.allFinite());

  const RunResult again = svgd::run(cfg);
  CHECK(oracle::same_bits(result.final_positions, again.final_positions));
}
