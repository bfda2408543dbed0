#ifndef SVGD_KERNEL_HPP
#define SVGD_KERNEL_HPP

#include "svgd/common.hpp"

namespace svgd {

enum class KernelFamily { gaussian };

/// Translation-invariant positive-definite interaction kernel with bandwidth
/// h. The normalized gaussian carries the (2*pi*h)^{-1/2} prefactor; the
/// unnormalized one peaks at 1 on the diagonal.
struct Kernel {
  KernelFamily family = KernelFamily::gaussian;
  double bandwidth = 1.0;
  bool normalized = false;

  /// (2*pi*h)^{-1/2} when normalized, 1 otherwise.
  double prefactor() const;

  /// K(x, y). Validates dimensions and finiteness.
  double value(const Vector& x, const Vector& y) const;

  /// Gradient of K(x, y) in its second argument: K(x, y) * (x - y) / h.
  Vector grad_y(const Vector& x, const Vector& y) const;
};

Kernel make_gaussian_kernel(double bandwidth, bool normalized = false);

/// Same family and normalization, new bandwidth.
Kernel with_bandwidth(const Kernel& k, double bandwidth);

struct BandwidthEstimate {
  double value = 0.0;
  bool degenerate = false;  // all pairwise distances were zero
};

/// Median heuristic h = med^2 / (2 log N), where med is the lower median of
/// the N(N-1)/2 pairwise distances. Requires N >= 2. A fully coincident
/// ensemble yields the floor 1e-8 with the degenerate flag set.
BandwidthEstimate median_bandwidth(const Matrix& positions);

}  // namespace svgd

#endif
