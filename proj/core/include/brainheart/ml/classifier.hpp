#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "brainheart/ml/dataset.hpp"
#include "brainheart/ml/forest.hpp"
#include "brainheart/ml/gbt.hpp"

namespace bh::ml {

enum class ClassifierKind { forest, gbt };

std::string_view to_string(ClassifierKind kind);
ClassifierKind parse_classifier(std::string_view text);

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::forest;
  ForestConfig forest;
  /// The objective is chosen from the class count: logistic_binary for two
  /// classes, softmax_multiclass otherwise.
  GbtConfig gbt;
};

/// A trained forest or GBT classifier behind one interface.
class Classifier {
 public:
  Classifier() = default;
  explicit Classifier(ForestModel m) : model_(std::move(m)) {}
  explicit Classifier(GbtModel m) : model_(std::move(m)) {}

  ClassifierKind kind() const { return std::holds_alternative<ForestModel>(model_) ? ClassifierKind::forest : ClassifierKind::gbt; }
  int predict(std::span<const double> x) const;
  std::vector<int> predict(const Matrix& x) const;
  std::vector<double> predict_proba(std::span<const double> x) const;

  const std::vector<std::string>& class_names() const;
  const std::vector<std::string>& feature_names() const;
  std::size_t n_features() const;
  void set_feature_names(std::vector<std::string> names);

  const ForestModel* forest() const { return std::get_if<ForestModel>(&model_); }
  const GbtModel* gbt() const { return std::get_if<GbtModel>(&model_); }

  /// Split-gain totals per feature, normalised to sum to 1 (all zero if no splits).
  std::vector<double> feature_importance() const;

 private:
  std::variant<ForestModel, GbtModel> model_;
};

Classifier train_classifier(const Dataset& data, const ClassifierConfig& cfg, int jobs = 1);

}  // namespace bh::ml
