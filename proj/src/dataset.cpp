#include "svgd/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace svgd {

namespace {

int map_label(double token, const LabelRemap& remap, long line) {
  if (remap.remap_12) {
    if (token == 1.0) return 1;
    if (token == 2.0) return -1;
    throw ParseError("label must be 1 or 2 under the 1/2 remap", line);
  }
  if (token == 1.0) return 1;
  if (token == -1.0) return -1;
  throw ParseError("label must be +1 or -1", line);
}

Dataset finish(std::vector<std::vector<double>>& rows, std::vector<int>& labels,
               int width) {
  Dataset out;
  out.features = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), width);
  out.labels.resize(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < static_cast<int>(rows[i].size()); ++j) {
      out.features(static_cast<Eigen::Index>(i), j) = rows[i][j];
    }
    out.labels(static_cast<Eigen::Index>(i)) = labels[i];
  }
  return out;
}

Dataset load_sparse(std::istream& in, const LabelRemap& remap) {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  int width = 0;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream ls(line);
    double label_token;
    if (!(ls >> label_token)) throw ParseError("missing label", lineno);
    labels.push_back(map_label(label_token, remap, lineno));
    std::vector<double> row;
    std::string item;
    while (ls >> item) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) {
        throw ParseError("expected index:value token, got '" + item + "'",
                         lineno);
      }
      int index = 0;
      double value = 0.0;
      try {
        std::size_t used = 0;
        index = std::stoi(item.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("trailing characters");
        value = std::stod(item.substr(colon + 1), &used);
        if (used != item.size() - colon - 1) {
          throw std::invalid_argument("trailing characters");
        }
      } catch (const std::exception&) {
        throw ParseError("malformed index:value token '" + item + "'", lineno);
      }
      if (index < 1) throw ParseError("indices are 1-based", lineno);
      if (index > static_cast<int>(row.size())) row.resize(index, 0.0);
      row[index - 1] = value;
    }
    width = std::max(width, static_cast<int>(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("dataset file holds no rows");
  return finish(rows, labels, width);
}

Dataset load_csv(std::istream& in, const LabelRemap& remap) {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  int width = -1;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::vector<double> values;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) {
          throw std::invalid_argument("trailing characters");
        }
      } catch (const std::exception&) {
        throw ParseError("malformed numeric cell '" + cell + "'", lineno);
      }
    }
    if (values.size() < 2) throw ParseError("row needs features and a label", lineno);
    if (width < 0) width = static_cast<int>(values.size()) - 1;
    if (static_cast<int>(values.size()) - 1 != width) {
      throw ParseError("inconsistent column count", lineno);
    }
    labels.push_back(map_label(values.back(), remap, lineno));
    values.pop_back();
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("dataset file holds no rows");
  return finish(rows, labels, width);
}

}  // namespace

void Dataset::make_split(double test_fraction, std::uint64_t seed) {
  require(test_fraction > 0.0 && test_fraction < 1.0,
          "test fraction must lie in (0, 1)");
  std::vector<int> order(static_cast<std::size_t>(size()));
  std::iota(order.begin(), order.end(), 0);
  Rng rng = make_stream(seed, Stream::scratch);
  std::shuffle(order.begin(), order.end(), rng);
  const int n_test = std::max(1, static_cast<int>(std::lround(test_fraction * size())));
  Split s;
  s.test.assign(order.begin(), order.begin() + n_test);
  s.train.assign(order.begin() + n_test, order.end());
  std::sort(s.test.begin(), s.test.end());
  std::sort(s.train.begin(), s.train.end());
  split = std::move(s);
}

std::vector<int> Dataset::train_indices() const {
  if (split) return split->train;
  std::vector<int> all(static_cast<std::size_t>(size()));
  std::iota(all.begin(), all.end(), 0);
  return all;
}

Dataset load_dataset(const std::string& path, DatasetFormat format,
                     LabelRemap remap) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file '" + path + "'");
  return format == DatasetFormat::libsvm_like ? load_sparse(in, remap)
                                              : load_csv(in, remap);
}

SyntheticLogistic make_synthetic_logistic(std::uint64_t seed, int n, int d_f,
                                          double separation) {
  require(n >= 10, "synthetic dataset needs n >= 10");
  require(d_f >= 1, "synthetic dataset needs d_f >= 1");
  require(separation >= 0.0, "separation must be non-negative");

  Rng rng = make_stream(seed, Stream::scratch);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  SyntheticLogistic out;
  out.true_weights.resize(d_f);
  for (int j = 0; j < d_f; ++j) out.true_weights(j) = separation * normal(rng);

  out.data.features.resize(n, d_f);
  out.data.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d_f; ++j) out.data.features(i, j) = normal(rng);
    const double logit = out.data.features.row(i).dot(out.true_weights);
    const double p_plus = 1.0 / (1.0 + std::exp(-logit));
    out.data.labels(i) = uniform(rng) < p_plus ? 1 : -1;
  }
  out.data.make_split(0.2, seed);
  return out;
}

}  // namespace svgd
