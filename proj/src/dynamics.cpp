#include "svgd/dynamics.hpp"

#include <cmath>

namespace svgd {

namespace {

void check_ensemble(const Matrix& positions) {
  require(positions.rows() >= 1 && positions.cols() >= 1,
          "ensemble must hold at least one particle");
  require(positions.allFinite(), "ensemble coordinates must be finite");
}

// Self-interaction row: (1/N) F(X_i, X_i) = (1/N) K(x, x) * score(x).
// The kernel gradient vanishes at coincidence.
void add_self_terms(Matrix& drift, const Kernel& kernel, const Matrix& scores,
                    double inv_n) {
  const double peak = kernel.prefactor();
  drift = (inv_n * peak) * scores;
}

// Accumulates sum_{j in members, j != i} F(X_i, X_j) for every i in members,
// in ascending-j order, exploiting K(x, y) = K(y, x).
void accumulate_pair_sums(Matrix& sums, const Matrix& positions,
                          const Kernel& kernel, const Matrix& scores,
                          const std::vector<int>& members) {
  const double inv_h = 1.0 / kernel.bandwidth;
  const double inv_2h = 0.5 * inv_h;
  const double peak = kernel.prefactor();
  const int q = static_cast<int>(members.size());
  Eigen::RowVectorXd diff(positions.cols());
  for (int a = 0; a < q; ++a) {
    const int i = members[static_cast<std::size_t>(a)];
    for (int b = a + 1; b < q; ++b) {
      const int j = members[static_cast<std::size_t>(b)];
      diff = positions.row(i) - positions.row(j);
      const double w = peak * std::exp(-diff.squaredNorm() * inv_2h);
      // a fully underflowed kernel contributes exactly nothing; skipping it
      // avoids 0 * inf when the separation itself overflows
      if (w == 0.0) continue;
      sums.row(i) += w * (diff * inv_h + scores.row(j));
      sums.row(j) += w * (scores.row(i) - diff * inv_h);
    }
  }
}

double batch_coefficient(int n, int cardinality) {
  // A batch spanning the whole ensemble reduces to the full dynamics; the
  // explicit 1/N keeps that reduction exact in floating point.
  if (cardinality == n) return 1.0 / n;
  return (1.0 - 1.0 / n) / (cardinality - 1);
}

std::vector<int> all_indices(int n) {
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
  return ids;
}

// Pair forces of particle i against every other particle, row j = F(x_i, x_j).
// Row i is left zero; callers treat the self term separately.
Matrix force_rows_against(const Matrix& positions, const Kernel& kernel,
                          const Matrix& scores, int i) {
  const int n = static_cast<int>(positions.rows());
  const double inv_h = 1.0 / kernel.bandwidth;
  const double inv_2h = 0.5 * inv_h;
  const double peak = kernel.prefactor();
  Matrix forces = Matrix::Zero(n, positions.cols());
  Eigen::RowVectorXd diff(positions.cols());
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    diff = positions.row(i) - positions.row(j);
    const double w = peak * std::exp(-diff.squaredNorm() * inv_2h);
    if (w == 0.0) continue;
    forces.row(j) = w * (diff * inv_h + scores.row(j));
  }
  return forces;
}

}  // namespace

Vector pair_force(const Kernel& kernel, const Target& target, const Vector& x,
                  const Vector& y, Rng* rng) {
  const double value = kernel.value(x, y);
  return kernel.grad_y(x, y) + value * target.score(y, rng);
}

Matrix full_drift(const Matrix& positions, const Kernel& kernel,
                  const Target& target, Rng* rng) {
  check_ensemble(positions);
  const int n = static_cast<int>(positions.rows());
  const double inv_n = 1.0 / n;
  const Matrix scores = target.score_rows(positions, rng);

  Matrix drift(n, positions.cols());
  add_self_terms(drift, kernel, scores, inv_n);
  Matrix sums = Matrix::Zero(n, positions.cols());
  accumulate_pair_sums(sums, positions, kernel, scores, all_indices(n));
  drift += inv_n * sums;
  return drift;
}

Matrix batch_drift(const Matrix& positions, const Kernel& kernel,
                   const Target& target, const BatchPartition& partition,
                   Rng* rng) {
  check_ensemble(positions);
  const int n = static_cast<int>(positions.rows());
  require(partition.n == n, "partition size mismatch");
  const double inv_n = 1.0 / n;
  const Matrix scores = target.score_rows(positions, rng);

  Matrix drift(n, positions.cols());
  add_self_terms(drift, kernel, scores, inv_n);
  Matrix sums = Matrix::Zero(n, positions.cols());
  for (const auto& batch : partition.batches) {
    require(batch.size() >= 2, "every batch needs at least two members");
    accumulate_pair_sums(sums, positions, kernel, scores, batch);
    const double coeff = batch_coefficient(n, static_cast<int>(batch.size()));
    for (int i : batch) drift.row(i) += coeff * sums.row(i);
    for (int i : batch) sums.row(i).setZero();
  }
  return drift;
}

Vector batch_noise(const Matrix& positions, const Kernel& kernel,
                   const Target& target, const BatchPartition& partition,
                   int i) {
  check_ensemble(positions);
  require(!target.stochastic(),
          "batch-noise diagnostics need an exact-mode target");
  const int n = static_cast<int>(positions.rows());
  require(partition.n == n, "partition size mismatch");
  require(i >= 0 && i < n, "particle index out of range");

  const Matrix scores = target.score_rows(positions);
  const Matrix forces = force_rows_against(positions, kernel, scores, i);

  Eigen::RowVectorXd exact = Eigen::RowVectorXd::Zero(positions.cols());
  for (int j = 0; j < n; ++j) {
    if (j != i) exact += forces.row(j);
  }
  exact *= batch_coefficient(n, n);  // 1/N, spelled like the batch side

  const auto& batch = partition.batch_of(i);
  Eigen::RowVectorXd sampled = Eigen::RowVectorXd::Zero(positions.cols());
  for (int j : batch) {
    if (j != i) sampled += forces.row(j);
  }
  sampled *= batch_coefficient(n, static_cast<int>(batch.size()));

  return (exact - sampled).transpose();
}

double batch_noise_second_moment(const Matrix& positions, const Kernel& kernel,
                                 const Target& target, int i, int p) {
  check_ensemble(positions);
  require(!target.stochastic(),
          "batch-noise diagnostics need an exact-mode target");
  const int n = static_cast<int>(positions.rows());
  require(n >= 3, "the dispersion term needs N >= 3");
  require(p >= 2 && p <= n, "batch size must satisfy 2 <= p <= N");
  require(i >= 0 && i < n, "particle index out of range");

  const Matrix scores = target.score_rows(positions);
  const Matrix forces = force_rows_against(positions, kernel, scores, i);

  Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(positions.cols());
  for (int j = 0; j < n; ++j) {
    if (j != i) mean += forces.row(j);
  }
  mean /= (n - 1);

  double dispersion = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j != i) dispersion += (forces.row(j) - mean).squaredNorm();
  }
  dispersion /= (n - 2);

  const double shrink = 1.0 - 1.0 / n;
  const double bracket = 1.0 / (p - 1) - 1.0 / (n - 1);
  return shrink * shrink * bracket * dispersion;
}

void apply_displacement(Matrix& positions, const Matrix& displacement,
                        int iteration) {
  require(positions.rows() == displacement.rows() &&
              positions.cols() == displacement.cols(),
          "displacement shape mismatch");
  positions += displacement;
  if (positions.allFinite()) return;
  for (Eigen::Index i = 0; i < positions.rows(); ++i) {
    if (!positions.row(i).allFinite()) {
      throw BlowupError(static_cast<int>(i), iteration);
    }
  }
}

Matrix svgd_step(const Matrix& positions, const Kernel& kernel,
                 const Target& target, double step, Rng* rng) {
  require(std::isfinite(step), "step must be finite");
  Matrix next = positions;
  apply_displacement(next, step * full_drift(positions, kernel, target, rng));
  return next;
}

Matrix rbm_step(const Matrix& positions, const Kernel& kernel,
                const Target& target, int p, double step, Rng& batch_rng,
                Rng* score_rng) {
  require(std::isfinite(step), "step must be finite");
  const auto partition =
      random_partition(static_cast<int>(positions.rows()), p, batch_rng);
  Matrix next = positions;
  apply_displacement(
      next, step * batch_drift(positions, kernel, target, partition, score_rng));
  return next;
}

Matrix replacement_sweep(const Matrix& positions, const Kernel& kernel,
                         const Target& target, int p,
                         const std::function<Matrix(const Matrix&)>& apply_step,
                         Rng& batch_rng, Rng* score_rng) {
  check_ensemble(positions);
  const int n = static_cast<int>(positions.rows());
  require(p >= 2 && p <= n, "batch size must satisfy 2 <= p <= N");
  const int sub_updates = (n + p - 1) / p;
  const double inv_n = 1.0 / n;
  const double peak = kernel.prefactor();

  Matrix state = positions;
  Matrix field = Matrix::Zero(n, positions.cols());
  Matrix scores = Matrix::Zero(n, positions.cols());
  Matrix sums = Matrix::Zero(n, positions.cols());
  for (int s = 0; s < sub_updates; ++s) {
    const auto batch = sample_batch(n, p, batch_rng);

    Matrix members(static_cast<Eigen::Index>(batch.members.size()),
                   positions.cols());
    for (std::size_t r = 0; r < batch.members.size(); ++r) {
      members.row(static_cast<Eigen::Index>(r)) =
          state.row(batch.members[r]);
    }
    const Matrix member_scores = target.score_rows(members, score_rng);
    for (std::size_t r = 0; r < batch.members.size(); ++r) {
      scores.row(batch.members[r]) =
          member_scores.row(static_cast<Eigen::Index>(r));
    }
    accumulate_pair_sums(sums, state, kernel, scores, batch.members);
    const double coeff =
        batch_coefficient(n, static_cast<int>(batch.members.size()));
    for (int i : batch.members) {
      field.row(i) = inv_n * peak * scores.row(i) + coeff * sums.row(i);
    }
    apply_displacement(state, apply_step(field));
    for (int i : batch.members) {
      field.row(i).setZero();
      sums.row(i).setZero();
    }
  }
  return state;
}

Matrix replacement_sweep(const Matrix& positions, const Kernel& kernel,
                         const Target& target, int p, double step,
                         Rng& batch_rng, Rng* score_rng) {
  require(std::isfinite(step), "step must be finite");
  return replacement_sweep(
      positions, kernel, target, p,
      [step](const Matrix& field) -> Matrix { return step * field; }, batch_rng,
      score_rng);
}

double mean_squared_deviation(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "ensembles must share a shape");
  return (a - b).squaredNorm() / static_cast<double>(a.rows());
}

}  // namespace svgd
