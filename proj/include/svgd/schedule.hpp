#ifndef SVGD_SCHEDULE_HPP
#define SVGD_SCHEDULE_HPP

#include "svgd/common.hpp"

namespace svgd {

enum class ScheduleKind { fixed, adagrad };

/// Step-size rule mapping a drift field to a displacement field. The adagrad
/// rule keeps one accumulator entry per ensemble coordinate: a cumulative sum
/// of squared drifts when beta == 0, an exponential average otherwise. State
/// is sized on first use and pinned to that shape afterwards.
class StepSchedule {
 public:
  static StepSchedule fixed(double eta);
  static StepSchedule adagrad(double eta0, double epsilon = 1e-6,
                              double beta = 0.9);

  /// Displacement for one iteration; advances internal state exactly once.
  Matrix apply(const Matrix& drift);

  ScheduleKind kind() const { return kind_; }
  double eta() const { return eta_; }
  double epsilon() const { return epsilon_; }
  double beta() const { return beta_; }
  const Matrix& accumulator() const { return accumulator_; }

 private:
  StepSchedule() = default;

  ScheduleKind kind_ = ScheduleKind::fixed;
  double eta_ = 0.1;
  double epsilon_ = 1e-6;
  double beta_ = 0.0;
  Matrix accumulator_;
};

}  // namespace svgd

#endif
