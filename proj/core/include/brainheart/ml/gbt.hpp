#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brainheart/ml/dataset.hpp"
#include "brainheart/ml/tree.hpp"

namespace bh::ml {

enum class Objective { softmax_multiclass, logistic_binary, squared_error_regression };

std::string_view to_string(Objective objective);
Objective parse_objective(std::string_view text);

struct GbtConfig {
  int n_trees = 500;
  int max_depth = 6;
  double learning_rate = 0.1;
  Objective objective = Objective::softmax_multiclass;
  /// 0 takes the class count from the data.
  int n_classes = 0;
  double lambda = 1.0;
  double min_child_weight = 1.0;
  /// Boosting here is fully deterministic; the seed is carried for the record.
  std::uint64_t seed = 42;

  void validate() const;
};

struct GbtModel {
  Objective objective = Objective::softmax_multiclass;
  int n_classes = 0;
  std::size_t n_features = 0;
  /// Trees per boosting round: n_classes for softmax, otherwise 1.
  int trees_per_round = 1;
  double base_score = 0.0;
  std::vector<Tree> trees;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;
  /// Mean training loss after each round.
  std::vector<double> loss_history;

  std::size_t rounds() const { return trees.size() / static_cast<std::size_t>(trees_per_round); }
  /// Additive margins, one per tree slot in a round.
  std::vector<double> margins(std::span<const double> x) const;
  /// Class probabilities (classification objectives only).
  std::vector<double> predict_proba(std::span<const double> x) const;
  int predict(std::span<const double> x) const;
  std::vector<int> predict(const Matrix& x) const;
  /// Regression output.
  double predict_value(std::span<const double> x) const;
  std::vector<double> predict_values(const Matrix& x) const;
};

/// Classification. logistic_binary requires exactly 2 classes; softmax
/// requires at least 2.
GbtModel train_gbt(const Dataset& data, const GbtConfig& cfg);
GbtModel train_gbt(const FeatureTable& table, Target target, const GbtConfig& cfg);

/// Single-output regression with the squared-error objective.
GbtModel train_gbt_regression(const Matrix& x, std::span<const double> y, const GbtConfig& cfg);

/// One independent regression model per output column.
struct MultiGbtModel {
  std::vector<GbtModel> outputs;
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;

  std::vector<double> predict(std::span<const double> x) const;
  Matrix predict(const Matrix& x) const;
};

MultiGbtModel train_gbt_multi(const Matrix& x, const Matrix& y, const GbtConfig& cfg, int jobs = 1);

/// Coefficient of determination; NaN when y_true is constant.
double r_squared(std::span<const double> y_true, std::span<const double> y_pred);

}  // namespace bh::ml
