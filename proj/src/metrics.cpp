#include "svgd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "svgd/target.hpp"

namespace svgd {

TestFunction TestFunction::identity(std::optional<double> truth) {
  return {TestFunctionKind::identity, {}, truth};
}

TestFunction TestFunction::square(std::optional<double> truth) {
  return {TestFunctionKind::square, {}, truth};
}

TestFunction TestFunction::cos2x(std::optional<double> truth) {
  return {TestFunctionKind::cos2x, {}, truth};
}

TestFunction TestFunction::custom(std::function<double(double)> fn,
                                  std::optional<double> truth) {
  require(static_cast<bool>(fn), "custom test function needs a callable");
  return {TestFunctionKind::custom, std::move(fn), truth};
}

double TestFunction::operator()(double x) const {
  switch (kind) {
    case TestFunctionKind::identity:
      return x;
    case TestFunctionKind::square:
      return x * x;
    case TestFunctionKind::cos2x:
      return std::cos(2.0 * x);
    case TestFunctionKind::custom:
      return fn(x);
  }
  return 0.0;
}

double empirical_expectation(const Matrix& positions, const TestFunction& f) {
  require(positions.cols() == 1, "built-in observables expect a 1D ensemble");
  require(positions.rows() >= 1, "empty ensemble");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < positions.rows(); ++i) sum += f(positions(i, 0));
  return sum / static_cast<double>(positions.rows());
}

double mse_over_runs(const std::vector<double>& estimates, double truth) {
  require(!estimates.empty(), "MSE needs at least one run");
  double sum = 0.0;
  for (double v : estimates) sum += (v - truth) * (v - truth);
  return sum / static_cast<double>(estimates.size());
}

double w2_empirical_1d(std::vector<double> a, std::vector<double> b) {
  require(!a.empty(), "empty sample set");
  require(a.size() == b.size(),
          "the sorted coupling needs equal sample counts");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

std::vector<double> kde_curve(const std::vector<double>& samples,
                              double bandwidth,
                              const std::vector<double>& grid) {
  require(bandwidth > 0.0, "KDE bandwidth must be positive");
  require(!samples.empty(), "KDE needs samples");
  const double norm =
      1.0 / (static_cast<double>(samples.size()) * bandwidth *
             std::sqrt(2.0 * std::numbers::pi));
  std::vector<double> out;
  out.reserve(grid.size());
  for (double g : grid) {
    double density = 0.0;
    for (double x : samples) {
      const double z = (g - x) / bandwidth;
      density += std::exp(-0.5 * z * z);
    }
    out.push_back(norm * density);
  }
  return out;
}

double silverman_bandwidth(const std::vector<double>& samples) {
  require(samples.size() >= 2, "bandwidth rule needs at least two samples");
  const double m = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= m;
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  var /= (m - 1.0);
  const double sigma = std::sqrt(var);
  if (sigma == 0.0) return 1e-8;
  return 1.06 * sigma * std::pow(m, -0.2);
}

double classification_accuracy(const Matrix& particles, const Dataset& data,
                               bool intercept) {
  require(data.split.has_value() && !data.split->test.empty(),
          "accuracy needs a test split");
  const int d_w = data.feature_count() + (intercept ? 1 : 0);
  require(static_cast<int>(particles.cols()) == d_w + 1,
          "particle layout must be [w, log alpha]");

  const auto weights = particles.leftCols(d_w);
  int correct = 0;
  for (int row : data.split->test) {
    Vector x(d_w);
    x.head(data.feature_count()) = data.features.row(row).transpose();
    if (intercept) x(d_w - 1) = 1.0;
    double prob = 0.0;
    for (Eigen::Index i = 0; i < particles.rows(); ++i) {
      prob += sigmoid(weights.row(i).dot(x));
    }
    prob /= static_cast<double>(particles.rows());
    const int predicted = prob >= 0.5 ? 1 : -1;
    if (predicted == data.labels(row)) ++correct;
  }
  return static_cast<double>(correct) /
         static_cast<double>(data.split->test.size());
}

}  // namespace svgd
