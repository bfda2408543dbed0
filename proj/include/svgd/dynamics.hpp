#ifndef SVGD_DYNAMICS_HPP
#define SVGD_DYNAMICS_HPP

#include <functional>

#include "svgd/batching.hpp"
#include "svgd/kernel.hpp"
#include "svgd/target.hpp"

namespace svgd {

/// Interaction force F(x, y) = grad_y K(x, y) + K(x, y) * score(y). Not
/// antisymmetric and not zero at x == y, where the gradient term vanishes and
/// F(x, x) = K(x, x) * score(x).
Vector pair_force(const Kernel& kernel, const Target& target, const Vector& x,
                  const Vector& y, Rng* rng = nullptr);

/// Full interaction drift: row i = (1/N) sum_j F(X_i, X_j), self term
/// included. Theta(N^2 d); scores are evaluated once per row of X (one shared
/// data-mini-batch per call in stochastic mode).
Matrix full_drift(const Matrix& positions, const Kernel& kernel,
                  const Target& target, Rng* rng = nullptr);

/// Batch drift: row i = (1/N) F(X_i, X_i)
///                    + (1 - 1/N)/(|C| - 1) sum_{j in C, j != i} F(X_i, X_j)
/// with C the batch holding i. A batch covering all N particles reproduces
/// full_drift bit for bit. Theta(N p d).
Matrix batch_drift(const Matrix& positions, const Kernel& kernel,
                   const Target& target, const BatchPartition& partition,
                   Rng* rng = nullptr);

/// Difference between the exact interaction term of particle i and its batch
/// counterpart (the shared self term cancels). Zero mean over partitions.
/// Exact-mode targets only.
Vector batch_noise(const Matrix& positions, const Kernel& kernel,
                   const Target& target, const BatchPartition& partition,
                   int i);

/// Closed-form second moment of batch_noise over partitions of batch size p:
/// (1 - 1/N)^2 (1/(p-1) - 1/(N-1)) * Lambda_i, where Lambda_i is the
/// empirical dispersion of the pair forces acting on i. Requires N >= 3.
double batch_noise_second_moment(const Matrix& positions, const Kernel& kernel,
                                 const Target& target, int i, int p);

/// positions += displacement, then verify finiteness. Throws BlowupError
/// naming the first offending particle.
void apply_displacement(Matrix& positions, const Matrix& displacement,
                        int iteration = -1);

/// One forward-Euler step of the full dynamics.
Matrix svgd_step(const Matrix& positions, const Kernel& kernel,
                 const Target& target, double step, Rng* rng = nullptr);

/// One forward-Euler step with a freshly drawn partition of batch size p.
Matrix rbm_step(const Matrix& positions, const Kernel& kernel,
                const Target& target, int p, double step, Rng& batch_rng,
                Rng* score_rng = nullptr);

/// One sweep of the with-replacement variant: ceil(N/p) sub-updates, each
/// drawing a fresh batch and advancing only its members by the full step.
/// Sub-updates act on the already partially updated state. apply_step maps a
/// drift field (zero rows for untouched particles) to a displacement field.
Matrix replacement_sweep(const Matrix& positions, const Kernel& kernel,
                         const Target& target, int p,
                         const std::function<Matrix(const Matrix&)>& apply_step,
                         Rng& batch_rng, Rng* score_rng = nullptr);

Matrix replacement_sweep(const Matrix& positions, const Kernel& kernel,
                         const Target& target, int p, double step,
                         Rng& batch_rng, Rng* score_rng = nullptr);

/// (1/N) sum_i |A_i - B_i|^2 for equally shaped ensembles.
double mean_squared_deviation(const Matrix& a, const Matrix& b);

}  // namespace svgd

#endif
