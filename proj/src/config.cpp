#include "svgd/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace svgd {

using nlohmann::json;

std::string method_name(Method m) {
  switch (m) {
    case Method::svgd:
      return "svgd";
    case Method::rbm_partition:
      return "rbm_partition";
    case Method::rbm_replacement:
      return "rbm_replacement";
  }
  return "svgd";
}

Method parse_method(const std::string& name) {
  if (name == "svgd") return Method::svgd;
  if (name == "rbm_partition") return Method::rbm_partition;
  if (name == "rbm_replacement") return Method::rbm_replacement;
  throw ParseError("unknown method '" + name + "'");
}

void RunConfig::validate() const {
  require(n_particles >= 1, "n_particles must be at least 1");
  require(iterations >= 0, "iterations must be non-negative");
  require(report.snapshot_stride >= 0, "snapshot stride must be non-negative");
  require(kernel.bandwidth > 0.0, "kernel bandwidth must be positive");
  require(init.stddev > 0.0, "initial spread must be positive");

  if (method != Method::svgd) {
    require(batch_size >= 2 && batch_size <= n_particles,
            "rbm methods need 2 <= batch_size <= n_particles");
    require(!kernel.dynamic_bandwidth,
            "dynamic bandwidth is only available for the full method");
  }
  if (kernel.dynamic_bandwidth) {
    require(n_particles >= 2, "dynamic bandwidth needs at least two particles");
  }

  if (target.kind == "gaussian_mixture_1d") {
    require(target.minibatch == 0, "the mixture target is exact-only");
  } else if (target.kind == "custom_quadratic") {
    require(target.dimension >= 1, "quadratic target needs dimension >= 1");
    require(target.minibatch == 0, "the quadratic target is exact-only");
  } else if (target.kind == "bayesian_logistic") {
    require(target.synthetic || !target.data_path.empty(),
            "logistic target needs a dataset source");
    require(target.minibatch >= 0, "minibatch must be non-negative");
  } else {
    throw std::invalid_argument("unknown target kind '" + target.kind + "'");
  }

  if (report.w2_reference > 0) {
    require(target.kind == "gaussian_mixture_1d",
            "W2 tracking needs the 1D mixture target");
    require(report.w2_reference == n_particles,
            "the sorted-coupling W2 needs as many reference draws as particles");
  }
  if (report.kde) {
    require(report.kde_points >= 2 && report.kde_max > report.kde_min,
            "KDE grid must span an interval");
    require(report.kde_bandwidth >= 0.0, "KDE bandwidth must be non-negative");
  }

  if (schedule.kind == "fixed") {
    require(schedule.eta > 0.0, "fixed step must be positive");
  } else if (schedule.kind == "adagrad") {
    require(schedule.eta0 > 0.0, "adagrad initial step must be positive");
    require(schedule.epsilon > 0.0, "adagrad epsilon must be positive");
    require(schedule.beta >= 0.0 && schedule.beta < 1.0,
            "adagrad beta must lie in [0, 1)");
  } else {
    throw std::invalid_argument("unknown schedule kind '" + schedule.kind + "'");
  }
}

namespace {

json to_json(const RunConfig& c) {
  json j;
  j["method"] = method_name(c.method);
  j["n_particles"] = c.n_particles;
  j["batch_size"] = c.batch_size;
  j["iterations"] = c.iterations;
  j["seed"] = c.seed;
  j["kernel"] = {{"family", "gaussian"},
                 {"bandwidth", c.kernel.bandwidth},
                 {"normalized", c.kernel.normalized},
                 {"dynamic_bandwidth", c.kernel.dynamic_bandwidth}};
  json t;
  t["kind"] = c.target.kind;
  t["dimension"] = c.target.dimension;
  t["minibatch"] = c.target.minibatch;
  t["intercept"] = c.target.intercept;
  t["data_path"] = c.target.data_path;
  t["data_format"] = c.target.data_format;
  t["remap_12"] = c.target.remap_12;
  t["synthetic"] = c.target.synthetic;
  t["synthetic_data"] = {{"n", c.target.synthetic_data.n},
                         {"d_f", c.target.synthetic_data.d_f},
                         {"separation", c.target.synthetic_data.separation}};
  t["data_seed"] = c.target.data_seed;
  j["target"] = t;
  j["schedule"] = {{"kind", c.schedule.kind},
                   {"eta", c.schedule.eta},
                   {"eta0", c.schedule.eta0},
                   {"epsilon", c.schedule.epsilon},
                   {"beta", c.schedule.beta}};
  j["init"] = {{"mean", c.init.mean}, {"stddev", c.init.stddev}};
  j["report"] = {{"snapshot_stride", c.report.snapshot_stride},
                 {"w2_reference", c.report.w2_reference},
                 {"kde", c.report.kde},
                 {"kde_min", c.report.kde_min},
                 {"kde_max", c.report.kde_max},
                 {"kde_points", c.report.kde_points},
                 {"kde_bandwidth", c.report.kde_bandwidth}};
  j["out_dir"] = c.out_dir;
  return j;
}

template <typename T>
void read(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

RunConfig from_json(const json& j) {
  RunConfig c;
  if (j.contains("method")) c.method = parse_method(j.at("method").get<std::string>());
  read(j, "n_particles", c.n_particles);
  read(j, "batch_size", c.batch_size);
  read(j, "iterations", c.iterations);
  read(j, "seed", c.seed);
  if (j.contains("kernel")) {
    const auto& k = j.at("kernel");
    read(k, "bandwidth", c.kernel.bandwidth);
    read(k, "normalized", c.kernel.normalized);
    read(k, "dynamic_bandwidth", c.kernel.dynamic_bandwidth);
  }
  if (j.contains("target")) {
    const auto& t = j.at("target");
    read(t, "kind", c.target.kind);
    read(t, "dimension", c.target.dimension);
    read(t, "minibatch", c.target.minibatch);
    read(t, "intercept", c.target.intercept);
    read(t, "data_path", c.target.data_path);
    read(t, "data_format", c.target.data_format);
    read(t, "remap_12", c.target.remap_12);
    read(t, "synthetic", c.target.synthetic);
    if (t.contains("synthetic_data")) {
      const auto& s = t.at("synthetic_data");
      read(s, "n", c.target.synthetic_data.n);
      read(s, "d_f", c.target.synthetic_data.d_f);
      read(s, "separation", c.target.synthetic_data.separation);
    }
    read(t, "data_seed", c.target.data_seed);
  }
  if (j.contains("schedule")) {
    const auto& s = j.at("schedule");
    read(s, "kind", c.schedule.kind);
    read(s, "eta", c.schedule.eta);
    read(s, "eta0", c.schedule.eta0);
    read(s, "epsilon", c.schedule.epsilon);
    read(s, "beta", c.schedule.beta);
  }
  if (j.contains("init")) {
    const auto& i = j.at("init");
    read(i, "mean", c.init.mean);
    read(i, "stddev", c.init.stddev);
  }
  if (j.contains("report")) {
    const auto& r = j.at("report");
    read(r, "snapshot_stride", c.report.snapshot_stride);
    read(r, "w2_reference", c.report.w2_reference);
    read(r, "kde", c.report.kde);
    read(r, "kde_min", c.report.kde_min);
    read(r, "kde_max", c.report.kde_max);
    read(r, "kde_points", c.report.kde_points);
    read(r, "kde_bandwidth", c.report.kde_bandwidth);
  }
  read(j, "out_dir", c.out_dir);
  return c;
}

}  // namespace

RunConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config field has the wrong type: ") + e.what());
  }
}

std::string config_to_json_text(const RunConfig& config) {
  return to_json(config).dump(2) + "\n";
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json_text(buffer.str());
}

void save_config(const RunConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write config file '" + path + "'");
  out << config_to_json_text(config);
}

}  // namespace svgd
