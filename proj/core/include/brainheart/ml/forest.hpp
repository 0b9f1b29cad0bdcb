#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "brainheart/ml/dataset.hpp"
#include "brainheart/ml/tree.hpp"

namespace bh::ml {

struct ForestConfig {
  int n_trees = 500;
  int max_depth = 10;
  /// Features tried per node; 0 means floor(sqrt(feature count)).
  int max_features = 0;
  int min_samples_leaf = 2;
  int min_samples_split = 10;
  bool bootstrap = false;
  /// Class weights total/(n_classes·count) in impurity and leaf votes.
  bool balanced = true;
  std::uint64_t seed = 42;

  void validate() const;
};

struct ForestModel {
  int n_classes = 0;
  std::size_t n_features = 0;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;
  std::vector<Tree> trees;

  /// Mean of per-tree leaf distributions.
  std::vector<double> predict_proba(std::span<const double> x) const;
  int predict(std::span<const double> x) const;
  std::vector<int> predict(const Matrix& x) const;
};

/// Tree t draws its feature subsets (and bootstrap sample, if enabled) from
/// Rng(mix_seed(seed, t)). Rows are put in canonical order first, so the model
/// does not depend on the order of the training rows.
ForestModel train_forest(const Dataset& data, const ForestConfig& cfg, int jobs = 1);
ForestModel train_forest(const FeatureTable& table, Target target, const ForestConfig& cfg, int jobs = 1);

/// Index of the largest value; the lowest index wins ties.
int argmax(std::span<const double> v);

/// Throws ValidationError unless there are >= 2 classes each with >= 2 rows.
void check_classes(const Dataset& data);

}  // namespace bh::ml
