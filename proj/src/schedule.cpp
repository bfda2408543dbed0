#include "svgd/schedule.hpp"

#include <cmath>

namespace svgd {

StepSchedule StepSchedule::fixed(double eta) {
  require(eta > 0.0 && std::isfinite(eta), "fixed step must be positive");
  StepSchedule s;
  s.kind_ = ScheduleKind::fixed;
  s.eta_ = eta;
  return s;
}

StepSchedule StepSchedule::adagrad(double eta0, double epsilon, double beta) {
  require(eta0 > 0.0 && std::isfinite(eta0), "initial step must be positive");
  require(epsilon > 0.0, "epsilon must be positive");
  require(beta >= 0.0 && beta < 1.0, "beta must lie in [0, 1)");
  StepSchedule s;
  s.kind_ = ScheduleKind::adagrad;
  s.eta_ = eta0;
  s.epsilon_ = epsilon;
  s.beta_ = beta;
  return s;
}

Matrix StepSchedule::apply(const Matrix& drift) {
  require(drift.allFinite(), "drift field must be finite");
  if (kind_ == ScheduleKind::fixed) return eta_ * drift;

  if (accumulator_.size() == 0) {
    accumulator_ = Matrix::Zero(drift.rows(), drift.cols());
  }
  require(accumulator_.rows() == drift.rows() &&
              accumulator_.cols() == drift.cols(),
          "schedule state is pinned to the first ensemble shape");

  if (beta_ == 0.0) {
    accumulator_.array() += drift.array().square();
  } else {
    accumulator_.array() =
        beta_ * accumulator_.array() + (1.0 - beta_) * drift.array().square();
  }
  return (eta_ * drift.array() / (epsilon_ + accumulator_.array().sqrt()))
      .matrix();
}

}  // namespace svgd
