#ifndef SVGD_TESTS_SUPPORT_HPP
#define SVGD_TESTS_SUPPORT_HPP

// Test-only reference implementations. They follow the defining formulas
// directly (double loops, no shared-score precomputation, no pair symmetry)
// so they stay independent of the library's evaluation paths.

#include <functional>
#include <random>

#include "svgd/batching.hpp"
#include "svgd/dynamics.hpp"
#include "svgd/kernel.hpp"
#include "svgd/target.hpp"

namespace oracle {

using svgd::Kernel;
using svgd::Matrix;
using svgd::Target;
using svgd::Vector;

inline Vector pair_force(const Kernel& kernel, const Target& target,
                         const Vector& x, const Vector& y) {
  return kernel.grad_y(x, y) + kernel.value(x, y) * target.score(y);
}

inline Matrix full_drift(const Matrix& positions, const Kernel& kernel,
                         const Target& target) {
  const auto n = positions.rows();
  Matrix drift = Matrix::Zero(n, positions.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      drift.row(i) += oracle::pair_force(kernel, target, positions.row(i).transpose(),
                                 positions.row(j).transpose())
                          .transpose();
    }
    drift.row(i) /= static_cast<double>(n);
  }
  return drift;
}

inline Matrix batch_drift(const Matrix& positions, const Kernel& kernel,
                          const Target& target,
                          const svgd::BatchPartition& partition) {
  const auto n = positions.rows();
  Matrix drift = Matrix::Zero(n, positions.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector xi = positions.row(i).transpose();
    drift.row(i) =
        oracle::pair_force(kernel, target, xi, xi).transpose() / static_cast<double>(n);
    const auto& batch = partition.batch_of(static_cast<int>(i));
    const double coeff = (1.0 - 1.0 / static_cast<double>(n)) /
                         (static_cast<double>(batch.size()) - 1.0);
    for (int j : batch) {
      if (j == static_cast<int>(i)) continue;
      drift.row(i) += coeff *
                      oracle::pair_force(kernel, target, xi, positions.row(j).transpose())
                          .transpose();
    }
  }
  return drift;
}

// Central finite difference of a scalar function.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f,
                          const Vector& x, double step) {
  Vector grad(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Vector hi = x;
    Vector lo = x;
    hi(j) += step;
    lo(j) -= step;
    grad(j) = (f(hi) - f(lo)) / (2.0 * step);
  }
  return grad;
}

inline Matrix random_matrix(int rows, int cols, std::mt19937_64& rng,
                            double spread = 1.0, double center = 0.0) {
  std::normal_distribution<double> normal(center, spread);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = normal(rng);
  }
  return m;
}

inline Vector random_vector(int size, std::mt19937_64& rng, double spread = 1.0) {
  return random_matrix(size, 1, rng, spread).col(0);
}

template <typename A, typename B>
bool same_bits(const A& a, const B& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a.array() == b.array()).all();
}

}  // namespace oracle

#endif
