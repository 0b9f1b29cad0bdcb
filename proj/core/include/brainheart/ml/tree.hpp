#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "brainheart/ml/dataset.hpp"

namespace bh::ml {

/// Internal nodes send x[feature] <= threshold to `left`.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  /// Split gain (internal nodes) in the builder's own units.
  double gain = 0.0;
  /// Offset of the leaf's values in Tree::values (leaves only).
  std::uint32_t value = 0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct Tree {
  int n_outputs = 1;
  std::vector<TreeNode> nodes;
  std::vector<double> values;

  int leaf_index(std::span<const double> x) const;
  std::span<const double> predict(std::span<const double> x) const;
  std::size_t depth() const;
  std::size_t leaf_count() const;
  bool operator==(const Tree&) const = default;
};

/// Per-feature row orders by (value, row index), computed once per training set.
class SortedColumns {
 public:
  explicit SortedColumns(const Matrix& x);
  std::span<const std::uint32_t> order(std::size_t feature) const { return orders_[feature]; }

 private:
  std::vector<std::vector<std::uint32_t>> orders_;
};

struct ClassTreeParams {
  int max_depth = 10;
  int min_samples_split = 10;
  int min_samples_leaf = 2;
  /// Features drawn per node; 0 or >= n_features means all.
  int max_features = 0;
  std::uint64_t seed = 0;
};

/// Weighted-Gini CART. Leaves hold weighted class distributions summing to 1.
Tree build_classification_tree(const Matrix& x, const SortedColumns& cols, std::span<const int> y, int n_classes,
                               std::span<const double> row_weight, const ClassTreeParams& params);

struct GradientTreeParams {
  int max_depth = 6;
  double lambda = 1.0;
  double min_child_weight = 1.0;
  /// Multiplies every leaf value.
  double learning_rate = 0.1;
};

/// Second-order regression tree: gain ½·[G_L²/(H_L+λ) + G_R²/(H_R+λ) − G²/(H+λ)],
/// leaf value −learning_rate·G/(H+λ). `leaf_of_row` receives each training
/// row's leaf node.
Tree build_gradient_tree(const Matrix& x, const SortedColumns& cols, std::span<const double> grad,
                         std::span<const double> hess, const GradientTreeParams& params,
                         std::vector<int>* leaf_of_row = nullptr);

/// Sum of split gains per feature, over all internal nodes.
std::vector<double> split_gain_totals(const std::vector<Tree>& trees, std::size_t n_features);

}  // namespace bh::ml
