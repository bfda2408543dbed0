#ifndef SVGD_METRICS_HPP
#define SVGD_METRICS_HPP

#include <functional>
#include <optional>
#include <vector>

#include "svgd/common.hpp"
#include "svgd/dataset.hpp"

namespace svgd {

enum class TestFunctionKind { identity, square, cos2x, custom };

/// Scalar observable h(x) for 1D ensembles, optionally paired with its known
/// expectation under the target.
struct TestFunction {
  TestFunctionKind kind = TestFunctionKind::identity;
  std::function<double(double)> fn;  // set for custom
  std::optional<double> truth;

  static TestFunction identity(std::optional<double> truth = {});
  static TestFunction square(std::optional<double> truth = {});
  static TestFunction cos2x(std::optional<double> truth = {});
  static TestFunction custom(std::function<double(double)> fn,
                             std::optional<double> truth = {});

  double operator()(double x) const;
};

/// (1/N) sum_i h(X_i); built-in functions require a 1D ensemble.
double empirical_expectation(const Matrix& positions, const TestFunction& f);

/// Mean squared deviation of per-run estimates from the truth, no Bessel
/// correction.
double mse_over_runs(const std::vector<double>& estimates, double truth);

/// Exact Wasserstein-2 distance between two equal-size 1D empirical measures
/// via the sorted (monotone) coupling.
double w2_empirical_1d(std::vector<double> a, std::vector<double> b);

/// Gaussian kernel density estimate evaluated on a grid.
std::vector<double> kde_curve(const std::vector<double>& samples,
                              double bandwidth,
                              const std::vector<double>& grid);

/// Rule-of-thumb KDE bandwidth 1.06 * sigma * M^(-1/5).
double silverman_bandwidth(const std::vector<double>& samples);

/// Fraction of test rows classified correctly by thresholding the particle-
/// averaged predicted probability at 0.5 (ties go to +1). Particles follow
/// the [w, log alpha] layout; the dataset must carry a test split.
double classification_accuracy(const Matrix& particles, const Dataset& data,
                               bool intercept = false);

}  // namespace svgd

#endif
