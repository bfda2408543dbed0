#ifndef SVGD_CONFIG_HPP
#define SVGD_CONFIG_HPP

#include <cstdint>
#include <string>

#include "svgd/common.hpp"

namespace svgd {

enum class Method { svgd, rbm_partition, rbm_replacement };

std::string method_name(Method m);
Method parse_method(const std::string& name);

struct KernelConfig {
  double bandwidth = 1.0;
  bool normalized = true;
  bool dynamic_bandwidth = false;  // median heuristic, full method only
};

struct SyntheticDataConfig {
  int n = 2000;
  int d_f = 10;
  double separation = 5.0;
};

struct TargetConfig {
  std::string kind = "gaussian_mixture_1d";  // | custom_quadratic | bayesian_logistic
  int dimension = 1;                         // custom_quadratic only
  int minibatch = 0;                         // 0 = exact score
  bool intercept = false;
  std::string data_path;                     // logistic: file source ...
  std::string data_format = "libsvm";        // libsvm | csv
  bool remap_12 = false;
  bool synthetic = true;                     // ... or generated source
  SyntheticDataConfig synthetic_data;
  std::uint64_t data_seed = 1;  // synthetic generation / split shuffling
};

struct ScheduleConfig {
  std::string kind = "adagrad";  // adagrad | fixed
  double eta = 0.1;              // fixed step
  double eta0 = 0.2;             // adagrad initial step
  double epsilon = 1e-6;
  double beta = 0.9;
};

struct InitConfig {
  double mean = 0.0;
  double stddev = 1.0;
};

struct ReportConfig {
  int snapshot_stride = 0;     // 0 = first and last only
  int w2_reference = 0;        // >0: track W2 against that many exact draws
  bool kde = false;
  double kde_min = -12.0;
  double kde_max = 8.0;
  int kde_points = 200;
  double kde_bandwidth = 0.0;  // 0 = rule-of-thumb from the final sample
};

/// Everything needed to replay one experiment: (config, seed) fixes the
/// trajectory exactly.
struct RunConfig {
  Method method = Method::svgd;
  int n_particles = 100;
  int batch_size = 0;  // rbm methods; 0 lets validate() reject
  int iterations = 500;
  std::uint64_t seed = 1;
  KernelConfig kernel;
  TargetConfig target;
  ScheduleConfig schedule;
  InitConfig init;
  ReportConfig report;
  std::string out_dir;

  /// Checks cross-field constraints.
  void validate() const;
};

RunConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const RunConfig& config);
RunConfig load_config(const std::string& path);
void save_config(const RunConfig& config, const std::string& path);

}  // namespace svgd

#endif
