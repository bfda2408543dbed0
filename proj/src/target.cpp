#include "svgd/target.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace svgd {

double sigmoid(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

double GaussianMixture1D::mean() const {
  return weights.dot(means);
}

double GaussianMixture1D::second_moment() const {
  return weights.dot((means.array().square() + variances.array()).matrix());
}

double GaussianMixture1D::expectation_cos2x() const {
  // E cos(2X) = cos(2m) exp(-2 sigma^2) for a normal component.
  double value = 0.0;
  for (int k = 0; k < 2; ++k) {
    value += weights(k) * std::cos(2.0 * means(k)) * std::exp(-2.0 * variances(k));
  }
  return value;
}

double GaussianMixture1D::sample(Rng& rng) const {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const int k = uniform(rng) < weights(0) ? 0 : 1;
  std::normal_distribution<double> normal(means(k), std::sqrt(variances(k)));
  return normal(rng);
}

namespace {

// Per-component log weights w_k phi_k(x) up to the shared (2 pi)^{-1/2}.
Eigen::Vector2d mixture_exponents(const GaussianMixture1D& m, double x) {
  Eigen::Vector2d out;
  for (int k = 0; k < 2; ++k) {
    const double d = x - m.means(k);
    out(k) = std::log(m.weights(k)) - 0.5 * std::log(m.variances(k)) -
             d * d / (2.0 * m.variances(k));
  }
  return out;
}

double mixture_score(const GaussianMixture1D& m, double x) {
  const Eigen::Vector2d ell = mixture_exponents(m, x);
  const double peak = ell.maxCoeff();
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k < 2; ++k) {
    const double r = std::exp(ell(k) - peak);
    num += r * (m.means(k) - x) / m.variances(k);
    den += r;
  }
  return num / den;
}

double mixture_log_density(const GaussianMixture1D& m, double x) {
  const Eigen::Vector2d ell = mixture_exponents(m, x);
  const double peak = ell.maxCoeff();
  return peak + std::log(std::exp(ell(0) - peak) + std::exp(ell(1) - peak));
}

LogisticPosterior build_logistic(std::shared_ptr<const Dataset> data,
                                 bool intercept) {
  require(static_cast<bool>(data), "logistic target needs a dataset");
  LogisticPosterior model;
  model.data = std::move(data);
  model.intercept = intercept;

  const auto train = model.data->train_indices();
  require(!train.empty(), "logistic target needs training rows");
  const int d_f = model.data->feature_count();
  const int d_w = d_f + (intercept ? 1 : 0);
  model.train_features.resize(static_cast<Eigen::Index>(train.size()), d_w);
  model.train_labels.resize(static_cast<Eigen::Index>(train.size()));
  for (std::size_t r = 0; r < train.size(); ++r) {
    model.train_features.row(static_cast<Eigen::Index>(r)).head(d_f) =
        model.data->features.row(train[r]);
    if (intercept) model.train_features(static_cast<Eigen::Index>(r), d_f) = 1.0;
    model.train_labels(static_cast<Eigen::Index>(r)) =
        static_cast<double>(model.data->labels(train[r]));
  }
  return model;
}

// Rows of the training design used for one score evaluation: everything in
// exact mode, a uniform subset without duplicates in minibatch mode.
struct DataView {
  Matrix features;
  Vector labels;
  double scale = 1.0;  // n_train / B
};

DataView draw_view(const LogisticPosterior& model, int minibatch, Rng* rng) {
  const int n_train = static_cast<int>(model.train_features.rows());
  if (minibatch <= 0) {
    return {model.train_features, model.train_labels, 1.0};
  }
  require(minibatch <= n_train,
          "data-mini-batch size exceeds the training set");
  require(rng != nullptr, "stochastic score needs a randomness handle");
  std::vector<int> picks;
  picks.reserve(static_cast<std::size_t>(minibatch));
  std::vector<int> all(static_cast<std::size_t>(n_train));
  std::iota(all.begin(), all.end(), 0);
  std::sample(all.begin(), all.end(), std::back_inserter(picks), minibatch,
              *rng);
  DataView view;
  view.features.resize(minibatch, model.train_features.cols());
  view.labels.resize(minibatch);
  for (int r = 0; r < minibatch; ++r) {
    view.features.row(r) = model.train_features.row(picks[static_cast<std::size_t>(r)]);
    view.labels(r) = model.train_labels(picks[static_cast<std::size_t>(r)]);
  }
  view.scale = static_cast<double>(n_train) / minibatch;
  return view;
}

Matrix logistic_score_rows(const LogisticPosterior& model, const Matrix& X,
                           const DataView& view, double shape, double rate) {
  const int d_w = model.weight_dim();
  require(static_cast<int>(X.cols()) == d_w + 1,
          "state layout must be [w, log alpha]");

  const Matrix weights = X.leftCols(d_w);
  const Vector log_alpha = X.col(d_w);

  // u(i, p) = y_i * (w_p . x_i); the data term is X_b^T (y .* sigmoid(-u)).
  Matrix u = view.features * weights.transpose();
  u.array().colwise() *= view.labels.array();
  const Matrix sig = (-u).unaryExpr([](double t) { return sigmoid(t); });
  Matrix weighted = sig;
  weighted.array().colwise() *= view.labels.array();
  const Matrix data_term = view.features.transpose() * weighted;  // d_w x N

  Matrix out(X.rows(), X.cols());
  for (Eigen::Index p = 0; p < X.rows(); ++p) {
    const double alpha = std::exp(log_alpha(p));
    const double wsq = weights.row(p).squaredNorm();
    out.row(p).head(d_w) =
        view.scale * data_term.col(p).transpose() - alpha * weights.row(p);
    out(p, d_w) = (d_w / 2.0 + shape) - alpha * (rate + wsq / 2.0);
  }
  return out;
}

double logistic_log_density(const LogisticPosterior& model, const Vector& x,
                            double shape, double rate) {
  const int d_w = model.weight_dim();
  require(static_cast<int>(x.size()) == d_w + 1,
          "state layout must be [w, log alpha]");
  const Vector w = x.head(d_w);
  const double s = x(d_w);
  const double alpha = std::exp(s);

  const Vector u =
      (model.train_features * w).cwiseProduct(model.train_labels);
  double log_lik = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) log_lik -= softplus(-u(i));

  const double log_prior_w = (d_w / 2.0) * s - alpha * w.squaredNorm() / 2.0;
  const double log_prior_s = shape * s - rate * alpha;  // Jacobian absorbed
  return log_lik + log_prior_w + log_prior_s;
}

}  // namespace

Target Target::mixture1d() { return Target(GaussianMixture1D{}); }

Target Target::quadratic(int dimension, Vector center, double curvature) {
  require(dimension >= 1, "quadratic target needs dimension >= 1");
  require(curvature >= 0.0, "quadratic curvature must be non-negative");
  if (center.size() == 0) center = Vector::Zero(dimension);
  require(static_cast<int>(center.size()) == dimension,
          "quadratic center dimension mismatch");
  return Target(QuadraticTarget{std::move(center), curvature});
}

Target Target::logistic(std::shared_ptr<const Dataset> data, bool intercept) {
  return Target(build_logistic(std::move(data), intercept));
}

Target Target::with_minibatch(int batch_size) const {
  require(batch_size >= 1, "data-mini-batch size must be positive");
  const auto* model = std::get_if<LogisticPosterior>(&model_);
  require(model != nullptr, "only the logistic target scores in minibatch mode");
  require(batch_size <= static_cast<int>(model->train_features.rows()),
          "data-mini-batch size exceeds the training set");
  Target copy = *this;
  copy.minibatch_ = batch_size;
  return copy;
}

int Target::dimension() const {
  return std::visit(
      [](const auto& model) -> int {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, GaussianMixture1D>) {
          return 1;
        } else if constexpr (std::is_same_v<T, QuadraticTarget>) {
          return static_cast<int>(model.center.size());
        } else {
          return model.weight_dim() + 1;
        }
      },
      model_);
}

Vector Target::score(const Vector& x, Rng* rng) const {
  require(x.allFinite(), "score input must be finite");
  require(static_cast<int>(x.size()) == dimension(), "score input dimension mismatch");
  if (const auto* m = std::get_if<GaussianMixture1D>(&model_)) {
    Vector out(1);
    out(0) = mixture_score(*m, x(0));
    return out;
  }
  if (const auto* q = std::get_if<QuadraticTarget>(&model_)) {
    return -q->curvature * (x - q->center);
  }
  const auto& model = std::get<LogisticPosterior>(model_);
  const DataView view = draw_view(model, minibatch_, rng);
  const Matrix row = logistic_score_rows(model, x.transpose(), view,
                                         model.prior_shape, model.prior_rate);
  return row.row(0).transpose();
}

Matrix Target::score_rows(const Matrix& X, Rng* rng) const {
  require(static_cast<int>(X.cols()) == dimension(),
          "ensemble dimension mismatch");
  if (const auto* model = std::get_if<LogisticPosterior>(&model_)) {
    const DataView view = draw_view(*model, minibatch_, rng);
    return logistic_score_rows(*model, X, view, model->prior_shape,
                               model->prior_rate);
  }
  Matrix out(X.rows(), X.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    out.row(i) = score(X.row(i).transpose()).transpose();
  }
  return out;
}

double Target::log_density_unnormalized(const Vector& x) const {
  require(x.allFinite(), "log-density input must be finite");
  require(static_cast<int>(x.size()) == dimension(),
          "log-density input dimension mismatch");
  if (const auto* m = std::get_if<GaussianMixture1D>(&model_)) {
    return mixture_log_density(*m, x(0));
  }
  if (const auto* q = std::get_if<QuadraticTarget>(&model_)) {
    return -q->curvature * (x - q->center).squaredNorm() / 2.0;
  }
  const auto& model = std::get<LogisticPosterior>(model_);
  return logistic_log_density(model, x, model.prior_shape, model.prior_rate);
}

const GaussianMixture1D* Target::mixture() const {
  return std::get_if<GaussianMixture1D>(&model_);
}

const LogisticPosterior* Target::logistic_model() const {
  return std::get_if<LogisticPosterior>(&model_);
}

}  // namespace svgd
