#ifndef SVGD_BATCHING_HPP
#define SVGD_BATCHING_HPP

#include <vector>

#include "svgd/common.hpp"
#include "svgd/rng.hpp"

namespace svgd {

/// Division of {0..n-1} into disjoint batches of nominal size p, realized by
/// cutting a uniform permutation into consecutive blocks. When p does not
/// divide n, the trailing block of size r keeps its own batch for r >= 2 and
/// is merged into the previous one for r == 1, so no batch has fewer than two
/// members. Members are stored in ascending order.
struct BatchPartition {
  std::vector<std::vector<int>> batches;
  std::vector<int> owner;  // owner[i] = index into batches
  int batch_size = 0;      // nominal p
  int n = 0;

  const std::vector<int>& batch_of(int i) const {
    return batches[static_cast<std::size_t>(owner[static_cast<std::size_t>(i)])];
  }
  bool shared(int i, int j) const {
    return owner[static_cast<std::size_t>(i)] == owner[static_cast<std::size_t>(j)];
  }
};

BatchPartition random_partition(int n, int p, Rng& rng);

/// One batch of p distinct members drawn uniformly from the C(n, p) subsets,
/// in ascending order.
struct SampledBatch {
  std::vector<int> members;
};

SampledBatch sample_batch(int n, int p, Rng& rng);

/// Probability that two fixed indices land in a common batch: (p-1)/(n-1).
double pair_incidence_probability(int n, int p);

/// Probability that three fixed indices land in a common batch:
/// (p-1)(p-2) / ((n-1)(n-2)).
double triple_incidence_probability(int n, int p);

/// Every partition of {0..n-1} into blocks of exactly p, each unordered
/// partition appearing once. Requires p | n. Exhaustive-verification helper;
/// the count grows as n! / ((p!)^(n/p) (n/p)!).
std::vector<BatchPartition> enumerate_partitions(int n, int p);

}  // namespace svgd

#endif
