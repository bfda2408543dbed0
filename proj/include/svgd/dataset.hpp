#ifndef SVGD_DATASET_HPP
#define SVGD_DATASET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svgd/common.hpp"
#include "svgd/rng.hpp"

namespace svgd {

enum class DatasetFormat { libsvm_like, csv };

struct Split {
  std::vector<int> train;
  std::vector<int> test;
};

/// Binary classification dataset: dense feature matrix plus labels in
/// {-1, +1}, with an optional train/test split.
struct Dataset {
  Matrix features;         // n x d_f
  Eigen::VectorXi labels;  // n entries, each -1 or +1
  std::optional<Split> split;

  int size() const { return static_cast<int>(features.rows()); }
  int feature_count() const { return static_cast<int>(features.cols()); }

  /// Shuffled split with the given test fraction; deterministic in the seed.
  void make_split(double test_fraction, std::uint64_t seed);

  /// Training rows: the split's train set, or every row when unsplit.
  std::vector<int> train_indices() const;
};

struct LabelRemap {
  bool remap_12 = false;  // map label token 1 -> +1 and 2 -> -1
};

/// Reads sparse "label idx:value ..." rows (1-based indices, missing -> 0) or
/// dense CSV rows with the label in the final column. Throws ParseError with
/// the offending line number on malformed input.
Dataset load_dataset(const std::string& path, DatasetFormat format,
                     LabelRemap remap = {});

struct SyntheticLogistic {
  Dataset data;         // carries an 80/20 split
  Vector true_weights;  // the generating weight vector
};

/// Draws features from a unit normal and labels from the logistic model with
/// weights ~ separation * N(0, I). Deterministic given the seed.
SyntheticLogistic make_synthetic_logistic(std::uint64_t seed, int n, int d_f,
                                          double separation);

}  // namespace svgd

#endif
