#ifndef SVGD_REPORT_HPP
#define SVGD_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "svgd/common.hpp"
#include "svgd/config.hpp"

namespace svgd {

/// Per-snapshot metrics. Wall-clock fields are the only non-reproducible
/// content of a run report.
struct Snapshot {
  int iteration = 0;
  double elapsed_seconds = 0.0;
  std::vector<double> moments;  // 1D targets: estimates of x, x^2, cos 2x
  std::optional<double> w2_reference;
  std::optional<double> accuracy;
};

struct KdeTrace {
  std::vector<double> grid;
  std::vector<double> density;
};

struct RunResult {
  RunConfig config;  // echo, every default resolved
  std::vector<Snapshot> snapshots;
  Matrix final_positions;
  int completed_iterations = 0;
  double total_seconds = 0.0;
  double mean_iteration_seconds = 0.0;
  bool failed = false;
  std::string failure;
  std::optional<KdeTrace> kde;
};

/// Newline-delimited JSON, one record per snapshot.
std::string snapshots_to_jsonl(const RunResult& result);

/// Human-readable run summary.
std::string run_summary(const RunResult& result);

/// Plain-text numeric matrix, one row per line.
std::string matrix_to_text(const Matrix& m);

/// Writes config.json, snapshots.jsonl, summary.txt, ensemble.txt and, when
/// present, kde.txt under directory (created if needed).
void write_run_artifacts(const RunResult& result, const std::string& directory);

}  // namespace svgd

#endif
