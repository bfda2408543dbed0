#include "svgd/batching.hpp"

#include <algorithm>
#include <numeric>

namespace svgd {

namespace {

void check_sizes(int n, int p, int minimum_p) {
  require(n >= 2, "partitioning needs at least two indices");
  require(p >= minimum_p && p <= n, "batch size must satisfy 2 <= p <= n");
}

void finalize(BatchPartition& part) {
  part.owner.assign(static_cast<std::size_t>(part.n), -1);
  for (std::size_t q = 0; q < part.batches.size(); ++q) {
    std::sort(part.batches[q].begin(), part.batches[q].end());
    for (int i : part.batches[q]) {
      part.owner[static_cast<std::size_t>(i)] = static_cast<int>(q);
    }
  }
}

}  // namespace

BatchPartition random_partition(int n, int p, Rng& rng) {
  check_sizes(n, p, 2);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  BatchPartition part;
  part.batch_size = p;
  part.n = n;
  const int full = n / p;
  const int rest = n % p;
  part.batches.reserve(static_cast<std::size_t>(full) + (rest >= 2 ? 1 : 0));
  auto cursor = order.begin();
  for (int q = 0; q < full; ++q) {
    const bool absorb_rest = rest == 1 && q == full - 1;
    const int extent = p + (absorb_rest ? 1 : 0);
    part.batches.emplace_back(cursor, cursor + extent);
    cursor += extent;
  }
  if (rest >= 2) part.batches.emplace_back(cursor, order.end());

  finalize(part);
  return part;
}

SampledBatch sample_batch(int n, int p, Rng& rng) {
  check_sizes(n, p, 2);
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  SampledBatch batch;
  batch.members.reserve(static_cast<std::size_t>(p));
  std::sample(all.begin(), all.end(), std::back_inserter(batch.members), p, rng);
  return batch;
}

double pair_incidence_probability(int n, int p) {
  check_sizes(n, p, 2);
  return static_cast<double>(p - 1) / (n - 1);
}

double triple_incidence_probability(int n, int p) {
  check_sizes(n, p, 2);
  require(n >= 3, "triple incidence needs n >= 3");
  return static_cast<double>(p - 1) * (p - 2) /
         (static_cast<double>(n - 1) * (n - 2));
}

namespace {

void enumerate_rec(std::vector<int>& pool, int p,
                   std::vector<std::vector<int>>& current,
                   std::vector<BatchPartition>& out, int n) {
  if (pool.empty()) {
    BatchPartition part;
    part.batch_size = p;
    part.n = n;
    part.batches = current;
    finalize(part);
    out.push_back(std::move(part));
    return;
  }
  // Anchor on the smallest remaining index so each unordered partition is
  // produced exactly once.
  const int anchor = pool.front();
  std::vector<int> rest(pool.begin() + 1, pool.end());
  const int m = static_cast<int>(rest.size());

  std::vector<int> choose(static_cast<std::size_t>(p - 1));
  std::iota(choose.begin(), choose.end(), 0);
  while (true) {
    std::vector<int> block{anchor};
    std::vector<bool> taken(static_cast<std::size_t>(m), false);
    for (int c : choose) {
      block.push_back(rest[static_cast<std::size_t>(c)]);
      taken[static_cast<std::size_t>(c)] = true;
    }
    std::vector<int> remaining;
    for (int i = 0; i < m; ++i) {
      if (!taken[static_cast<std::size_t>(i)]) {
        remaining.push_back(rest[static_cast<std::size_t>(i)]);
      }
    }
    current.push_back(std::move(block));
    enumerate_rec(remaining, p, current, out, n);
    current.pop_back();

    // Next (p-1)-combination of {0..m-1} in lexicographic order.
    int k = p - 2;
    while (k >= 0 && choose[static_cast<std::size_t>(k)] == m - (p - 1) + k) --k;
    if (k < 0) break;
    ++choose[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < p - 1; ++j) {
      choose[static_cast<std::size_t>(j)] = choose[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace

std::vector<BatchPartition> enumerate_partitions(int n, int p) {
  check_sizes(n, p, 2);
  require(n % p == 0, "exhaustive enumeration requires p | n");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::vector<int>> current;
  std::vector<BatchPartition> out;
  enumerate_rec(pool, p, current, out, n);
  return out;
}

}  // namespace svgd
