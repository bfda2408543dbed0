#include "svgd/report.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace svgd {

using nlohmann::json;

std::string snapshots_to_jsonl(const RunResult& result) {
  std::ostringstream out;
  for (const auto& s : result.snapshots) {
    json record;
    record["iteration"] = s.iteration;
    record["elapsed_s"] = s.elapsed_seconds;
    if (s.moments.size() == 3) {
      record["h1"] = s.moments[0];
      record["h2"] = s.moments[1];
      record["h3"] = s.moments[2];
    }
    if (s.w2_reference) record["w2_reference"] = *s.w2_reference;
    if (s.accuracy) record["accuracy"] = *s.accuracy;
    out << record.dump() << "\n";
  }
  return out.str();
}

std::string run_summary(const RunResult& result) {
  std::ostringstream out;
  out << std::setprecision(6);
  out << "method              " << method_name(result.config.method) << "\n";
  out << "particles           " << result.config.n_particles << "\n";
  if (result.config.method != Method::svgd) {
    out << "batch size          " << result.config.batch_size << "\n";
  }
  out << "target              " << result.config.target.kind << "\n";
  out << "iterations          " << result.completed_iterations << " / "
      << result.config.iterations << "\n";
  out << "seed                " << result.config.seed << "\n";
  out << "total runtime (s)   " << result.total_seconds << "\n";
  out << "mean iteration (s)  " << result.mean_iteration_seconds << "\n";
  if (result.failed) {
    out << "status              FAILED: " << result.failure << "\n";
  } else {
    out << "status              ok\n";
  }
  if (!result.snapshots.empty()) {
    const auto& last = result.snapshots.back();
    if (last.moments.size() == 3) {
      out << "final  E[x]         " << last.moments[0] << "\n";
      out << "final  E[x^2]       " << last.moments[1] << "\n";
      out << "final  E[cos 2x]    " << last.moments[2] << "\n";
    }
    if (last.w2_reference) {
      out << "final  W2(ref)      " << *last.w2_reference << "\n";
    }
    if (last.accuracy) {
      out << "final  accuracy     " << *last.accuracy << "\n";
    }
  }
  return out.str();
}

std::string matrix_to_text(const Matrix& m) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << " ";
      out << m(i, j);
    }
    out << "\n";
  }
  return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << body;
}

}  // namespace

void write_run_artifacts(const RunResult& result, const std::string& directory) {
  const std::filesystem::path dir(directory);
  std::filesystem::create_directories(dir);
  write_file(dir / "config.json", config_to_json_text(result.config));
  write_file(dir / "snapshots.jsonl", snapshots_to_jsonl(result));
  write_file(dir / "summary.txt", run_summary(result));
  write_file(dir / "ensemble.txt", matrix_to_text(result.final_positions));
  if (result.kde) {
    std::ostringstream kde;
    kde << std::setprecision(12);
    for (std::size_t i = 0; i < result.kde->grid.size(); ++i) {
      kde << result.kde->grid[i] << " " << result.kde->density[i] << "\n";
    }
    write_file(dir / "kde.txt", kde.str());
  }
}

}  // namespace svgd
