#include "brainheart/ml/classifier.hpp"

#include <numeric>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"

namespace bh::ml {

std::string_view to_string(ClassifierKind kind) { return kind == ClassifierKind::forest ? "forest" : "gbt"; }

ClassifierKind parse_classifier(std::string_view text) {
  if (text == "forest") return ClassifierKind::forest;
  if (text == "gbt") return ClassifierKind::gbt;
  throw ValidationError(fmt::format("unknown classifier '{}' (expected forest or gbt)", text));
}

int Classifier::predict(std::span<const double> x) const {
  return std::visit([&](const auto& m) { return m.predict(x); }, model_);
}

std::vector<int> Classifier::predict(const Matrix& x) const {
  return std::visit([&](const auto& m) { return m.predict(x); }, model_);
}

std::vector<double> Classifier::predict_proba(std::span<const double> x) const {
  return std::visit([&](const auto& m) { return m.predict_proba(x); }, model_);
}

const std::vector<std::string>& Classifier::class_names() const {
  return std::visit([](const auto& m) -> const std::vector<std::string>& { return m.class_names; }, model_);
}

const std::vector<std::string>& Classifier::feature_names() const {
  return std::visit([](const auto& m) -> const std::vector<std::string>& { return m.feature_names; }, model_);
}

std::size_t Classifier::n_features() const {
  return std::visit([](const auto& m) { return m.n_features; }, model_);
}

void Classifier::set_feature_names(std::vector<std::string> names) {
  if (names.size() != n_features()) {
    throw ValidationError(fmt::format("{} feature names for a model with {} features", names.size(), n_features()));
  }
  std::visit([&](auto& m) { m.feature_names = std::move(names); }, model_);
}

std::vector<double> Classifier::feature_importance() const {
  auto g = std::visit([](const auto& m) { return split_gain_totals(m.trees, m.n_features); }, model_);
  const double total = std::accumulate(g.begin(), g.end(), 0.0);
  if (total > 0.0) {
    for (double& v : g) v /= total;
  }
  return g;
}

Classifier train_classifier(const Dataset& data, const ClassifierConfig& cfg, int jobs) {
  if (cfg.kind == ClassifierKind::forest) return Classifier(train_forest(data, cfg.forest, jobs));
  GbtConfig g = cfg.gbt;
  g.objective = data.n_classes == 2 ? Objective::logistic_binary : Objective::softmax_multiclass;
  g.n_classes = data.n_classes;
  return Classifier(train_gbt(data, g));
}

}  // namespace bh::ml
