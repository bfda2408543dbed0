#include "svgd/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace svgd {

namespace {

void check_pair(const Vector& x, const Vector& y) {
  require(x.size() == y.size(), "kernel arguments must share a dimension");
  require(x.size() >= 1, "kernel arguments must be non-empty");
  require(x.allFinite() && y.allFinite(), "kernel arguments must be finite");
}

}  // namespace

double Kernel::prefactor() const {
  return normalized ? 1.0 / std::sqrt(2.0 * std::numbers::pi * bandwidth) : 1.0;
}

double Kernel::value(const Vector& x, const Vector& y) const {
  check_pair(x, y);
  const double sq = (x - y).squaredNorm();
  return prefactor() * std::exp(-sq / (2.0 * bandwidth));
}

Vector Kernel::grad_y(const Vector& x, const Vector& y) const {
  return value(x, y) * (x - y) / bandwidth;
}

Kernel make_gaussian_kernel(double bandwidth, bool normalized) {
  require(bandwidth > 0.0 && std::isfinite(bandwidth),
          "kernel bandwidth must be positive");
  return Kernel{KernelFamily::gaussian, bandwidth, normalized};
}

Kernel with_bandwidth(const Kernel& k, double bandwidth) {
  return make_gaussian_kernel(bandwidth, k.normalized);
}

BandwidthEstimate median_bandwidth(const Matrix& positions) {
  const auto n = positions.rows();
  require(n >= 2, "median bandwidth needs at least two particles");

  std::vector<double> distances;
  distances.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      distances.push_back((positions.row(i) - positions.row(j)).norm());
    }
  }

  // Lower median: deterministic for even counts, no interpolation.
  const std::size_t mid = (distances.size() - 1) / 2;
  std::nth_element(distances.begin(), distances.begin() + mid, distances.end());
  const double med = distances[mid];

  if (med == 0.0) return {1e-8, true};
  return {med * med / (2.0 * std::log(static_cast<double>(n))), false};
}

}  // namespace svgd
