#ifndef SVGD_TARGET_HPP
#define SVGD_TARGET_HPP

#include <memory>
#include <variant>

#include "svgd/common.hpp"
#include "svgd/dataset.hpp"
#include "svgd/rng.hpp"

namespace svgd {

/// Two-component mixture in 1D: weights (1/3, 2/3), means (-2, +2), unit
/// variances. Closed-form moments back the sampling-accuracy protocol.
struct GaussianMixture1D {
  Eigen::Vector2d weights{1.0 / 3.0, 2.0 / 3.0};
  Eigen::Vector2d means{-2.0, 2.0};
  Eigen::Vector2d variances{1.0, 1.0};

  double mean() const;
  double second_moment() const;
  double expectation_cos2x() const;

  double sample(Rng& rng) const;
};

/// V(x) = curvature/2 * |x - center|^2, an isotropic Gaussian potential.
struct QuadraticTarget {
  Vector center;
  double curvature = 1.0;
};

/// Bayesian logistic regression posterior over x = [w, log alpha]: Gaussian
/// prior N(0, 1/alpha) on the weights and a Gamma(shape, rate) hyperprior on
/// the precision alpha. The log-alpha coordinate absorbs the change-of-
/// variable Jacobian.
struct LogisticPosterior {
  std::shared_ptr<const Dataset> data;
  bool intercept = false;
  double prior_shape = 1.0;
  double prior_rate = 0.01;

  // Cached training design (intercept column appended when requested).
  Matrix train_features;  // n_train x d_w
  Vector train_labels;    // n_train

  int weight_dim() const { return static_cast<int>(train_features.cols()); }
};

/// Target log-density accessor. Exact mode is deterministic; minibatch mode
/// estimates the logistic data term from a random subset of the training
/// rows, one shared subset per score_rows call.
class Target {
 public:
  static Target mixture1d();
  static Target quadratic(int dimension, Vector center = Vector(),
                          double curvature = 1.0);
  static Target logistic(std::shared_ptr<const Dataset> data,
                         bool intercept = false);

  /// Copy of this target that scores with data-mini-batches of given size.
  Target with_minibatch(int batch_size) const;

  int dimension() const;
  bool stochastic() const { return minibatch_ > 0; }
  int minibatch_size() const { return minibatch_; }

  /// grad log pi(x). Stochastic mode draws one data-mini-batch from rng.
  Vector score(const Vector& x, Rng* rng = nullptr) const;

  /// Scores for every row of X. Stochastic mode draws a single mini-batch
  /// shared by all rows.
  Matrix score_rows(const Matrix& X, Rng* rng = nullptr) const;

  /// log pi(x) up to an additive constant; its gradient is the exact score.
  double log_density_unnormalized(const Vector& x) const;

  const GaussianMixture1D* mixture() const;
  const LogisticPosterior* logistic_model() const;

 private:
  using Model = std::variant<GaussianMixture1D, QuadraticTarget, LogisticPosterior>;

  explicit Target(Model model) : model_(std::move(model)) {}

  Model model_;
  int minibatch_ = 0;  // 0 = exact
};

/// Numerically stable sigmoid and log(1 + e^t).
double sigmoid(double t);
double softplus(double t);

}  // namespace svgd

#endif
