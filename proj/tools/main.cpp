#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svgd/harness.hpp"
#include "svgd/metrics.hpp"

namespace {

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw svgd::ParseError("cannot write '" + path + "'");
  out << body;
}

svgd::RunConfig load_base_config(const std::string& path) {
  if (path.empty()) return svgd::RunConfig{};
  return svgd::load_config(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stein variational gradient descent with random particle batches"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd, bool with_config = true) {
    if (with_config) cmd->add_option("--config", config_path, "JSON run config");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, "override the config seed")
        ->each([&seed_set](const std::string&) { seed_set = true; });
  };

  auto* cmd_run = app.add_subcommand("run", "single experiment run");
  add_common(cmd_run);

  auto* cmd_compare =
      app.add_subcommand("compare", "full method vs batch variants");
  std::vector<int> batch_sizes{2, 8, 32};
  int runs = 20;
  add_common(cmd_compare);
  cmd_compare->add_option("--batch-sizes", batch_sizes, "batch sizes to test")
      ->delimiter(',');
  cmd_compare->add_option("--runs", runs, "independent runs per method");

  auto* cmd_consistency =
      app.add_subcommand("consistency", "batch-noise and incidence laws");
  int cons_n = 64;
  std::vector<int> cons_ps{2, 4, 8};
  long trials = 1000000;  // the 1% incidence tolerance needs ~1e6 draws
  add_common(cmd_consistency, false);
  cmd_consistency->add_option("--n", cons_n, "particle count");
  cmd_consistency->add_option("--p", cons_ps, "batch sizes")->delimiter(',');
  cmd_consistency->add_option("--trials", trials, "Monte Carlo draws");

  auto* cmd_scaling =
      app.add_subcommand("scaling", "coupled deviation vs step size");
  std::vector<double> etas{0.1, 0.05, 0.025, 0.0125};
  int scaling_seeds = 50;
  double horizon = 1.0;
  add_common(cmd_scaling);
  cmd_scaling->add_option("--etas", etas, "strictly decreasing steps")
      ->delimiter(',');
  cmd_scaling->add_option("--seeds", scaling_seeds, "seeds per step size");
  cmd_scaling->add_option("--horizon", horizon, "shared time horizon T");

  auto* cmd_bench = app.add_subcommand("bench", "per-iteration wall time");
  std::vector<int> bench_ns{256, 512, 1024};
  std::vector<int> bench_ps{2, 8, 32};
  int bench_d = 2;
  int bench_iterations = 100;
  add_common(cmd_bench, false);
  cmd_bench->add_option("--n", bench_ns, "particle counts")->delimiter(',');
  cmd_bench->add_option("--p", bench_ps, "batch sizes")->delimiter(',');
  cmd_bench->add_option("--d", bench_d, "dimension");
  cmd_bench->add_option("--iterations", bench_iterations, "timed iterations");

  auto* cmd_dataset = app.add_subcommand("dataset-check", "parse and summarize");
  std::string data_path;
  std::string data_format = "libsvm";
  bool remap_12 = false;
  cmd_dataset->add_option("--path", data_path, "dataset file")->required();
  cmd_dataset->add_option("--format", data_format, "libsvm | csv");
  cmd_dataset->add_flag("--remap-12", remap_12, "map labels 1 -> +1, 2 -> -1");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      svgd::RunConfig cfg = load_base_config(config_path);
      if (seed_set) cfg.seed = seed;
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      const svgd::RunResult result = svgd::run(cfg);
      std::cout << svgd::run_summary(result);
      return result.failed ? 2 : 0;
    }
    if (cmd_compare->parsed()) {
      svgd::RunConfig cfg = load_base_config(config_path);
      if (seed_set) cfg.seed = seed;
      const auto report = svgd::compare(cfg, batch_sizes, runs);
      std::cout << svgd::compare_table(report);
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_text(out_dir + "/compare.json", svgd::compare_to_json_text(report));
        write_text(out_dir + "/compare.txt", svgd::compare_table(report));
      }
      int failures = 0;
      for (const auto& m : report.methods) failures += m.failures;
      return failures > 0 ? 2 : 0;
    }
    if (cmd_consistency->parsed()) {
      const auto report =
          svgd::consistency_suite(cons_n, cons_ps, trials, seed_set ? seed : 7);
      std::cout << svgd::consistency_table(report);
      return 0;
    }
    if (cmd_scaling->parsed()) {
      svgd::RunConfig cfg = load_base_config(config_path);
      if (seed_set) cfg.seed = seed;
      if (cfg.batch_size == 0) cfg.batch_size = 2;
      const auto report = svgd::scaling_suite(cfg, etas, scaling_seeds, horizon);
      std::cout << svgd::scaling_table(report);
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_text(out_dir + "/scaling.txt", svgd::scaling_table(report));
      }
      return 0;
    }
    if (cmd_bench->parsed()) {
      const auto report = svgd::bench_suite(bench_ns, bench_ps, bench_d,
                                            bench_iterations, seed_set ? seed : 7);
      std::cout << svgd::bench_table(report);
      return 0;
    }
    if (cmd_dataset->parsed()) {
      const auto format = data_format == "csv" ? svgd::DatasetFormat::csv
                                               : svgd::DatasetFormat::libsvm_like;
      const auto data =
          svgd::load_dataset(data_path, format, svgd::LabelRemap{remap_12});
      int positive = 0;
      for (Eigen::Index i = 0; i < data.labels.size(); ++i) {
        if (data.labels(i) > 0) ++positive;
      }
      std::cout << "rows      " << data.size() << "\n"
                << "features  " << data.feature_count() << "\n"
                << "label +1  " << positive << "\n"
                << "label -1  " << data.size() - positive << "\n";
      return 0;
    }
  } catch (const svgd::BlowupError& e) {
    std::cerr << "blowup: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
