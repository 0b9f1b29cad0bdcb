#include "brainheart/ml/metrics.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "brainheart/util/error.hpp"

namespace bh::ml {

MetricsReport evaluate(std::span<const int> y_true, std::span<const int> y_pred,
                       const std::vector<std::string>& class_names) {
  if (y_true.size() != y_pred.size()) {
    throw ValidationError(fmt::format("length mismatch: {} true labels, {} predictions", y_true.size(), y_pred.size()));
  }
  if (y_true.empty()) throw ValidationError("no labels to evaluate");
  const std::size_t k = class_names.size();
  auto check = [&](int v, const char* what) {
    if (v < 0 || static_cast<std::size_t>(v) >= k) throw ValidationError(fmt::format("unknown {} label {}", what, v));
    return static_cast<std::size_t>(v);
  };

  MetricsReport m;
  m.class_names = class_names;
  m.confusion.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < y_true.size(); ++i) ++m.confusion[check(y_true[i], "true")][check(y_pred[i], "predicted")];
  m.total = y_true.size();

  std::size_t correct = 0;
  for (std::size_t c = 0; c < k; ++c) correct += m.confusion[c][c];
  m.accuracy = static_cast<double>(correct) / static_cast<double>(m.total);

  m.support.assign(k, 0);
  m.precision.assign(k, 0.0);
  m.recall.assign(k, 0.0);
  m.f1.assign(k, 0.0);
  m.precision_zero_division.assign(k, false);
  m.recall_zero_division.assign(k, false);
  m.f1_zero_division.assign(k, false);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t predicted = 0;
    for (std::size_t t = 0; t < k; ++t) {
      m.support[c] += m.confusion[c][t];
      predicted += m.confusion[t][c];
    }
    const auto tp = static_cast<double>(m.confusion[c][c]);
    if (predicted == 0) {
      m.precision_zero_division[c] = true;
    } else {
      m.precision[c] = tp / static_cast<double>(predicted);
    }
    if (m.support[c] == 0) {
      m.recall_zero_division[c] = true;
    } else {
      m.recall[c] = tp / static_cast<double>(m.support[c]);
    }
    const double denom = m.precision[c] + m.recall[c];
    if (denom == 0.0) {
      m.f1_zero_division[c] = true;
    } else {
      m.f1[c] = 2.0 * m.precision[c] * m.recall[c] / denom;
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    const double w = static_cast<double>(m.support[c]) / static_cast<double>(m.total);
    m.macro_precision += m.precision[c] / static_cast<double>(k);
    m.macro_recall += m.recall[c] / static_cast<double>(k);
    m.macro_f1 += m.f1[c] / static_cast<double>(k);
    m.weighted_precision += w * m.precision[c];
    m.weighted_recall += w * m.recall[c];
    m.weighted_f1 += w * m.f1[c];
  }
  return m;
}

std::string metrics_to_json(const MetricsReport& m) {
  nlohmann::ordered_json j;
  j["accuracy"] = m.accuracy;
  j["total"] = m.total;
  j["classes"] = m.class_names;
  auto per_class = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < m.class_names.size(); ++c) {
    per_class.push_back({{"class", m.class_names[c]},
                         {"support", m.support[c]},
                         {"precision", m.precision[c]},
                         {"recall", m.recall[c]},
                         {"f1", m.f1[c]},
                         {"precision_zero_division", m.precision_zero_division[c]},
                         {"recall_zero_division", m.recall_zero_division[c]},
                         {"f1_zero_division", m.f1_zero_division[c]}});
  }
  j["per_class"] = per_class;
  j["macro"] = {{"precision", m.macro_precision}, {"recall", m.macro_recall}, {"f1", m.macro_f1}};
  j["weighted"] = {{"precision", m.weighted_precision}, {"recall", m.weighted_recall}, {"f1", m.weighted_f1}};
  j["confusion"] = m.confusion;
  return j.dump(2) + "\n";
}

MetricsReport metrics_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    MetricsReport m;
    m.accuracy = j.at("accuracy").get<double>();
    m.total = j.at("total").get<std::size_t>();
    m.class_names = j.at("classes").get<std::vector<std::string>>();
    for (const auto& c : j.at("per_class")) {
      m.support.push_back(c.at("support").get<std::size_t>());
      m.precision.push_back(c.at("precision").get<double>());
      m.recall.push_back(c.at("recall").get<double>());
      m.f1.push_back(c.at("f1").get<double>());
      m.precision_zero_division.push_back(c.at("precision_zero_division").get<bool>());
      m.recall_zero_division.push_back(c.at("recall_zero_division").get<bool>());
      m.f1_zero_division.push_back(c.at("f1_zero_division").get<bool>());
    }
    m.macro_precision = j.at("macro").at("precision").get<double>();
    m.macro_recall = j.at("macro").at("recall").get<double>();
    m.macro_f1 = j.at("macro").at("f1").get<double>();
    m.weighted_precision = j.at("weighted").at("precision").get<double>();
    m.weighted_recall = j.at("weighted").at("recall").get<double>();
    m.weighted_f1 = j.at("weighted").at("f1").get<double>();
    m.confusion = j.at("confusion").get<std::vector<std::vector<std::size_t>>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("metrics report: {}", e.what()));
  }
}

void write_confusion_csv(const MetricsReport& m, std::ostream& out) {
  out << "true\\predicted";
  for (const auto& n : m.class_names) out << ',' << n;
  out << '\n';
  for (std::size_t t = 0; t < m.class_names.size(); ++t) {
    out << m.class_names[t];
    for (const auto v : m.confusion[t]) out << ',' << v;
    out << '\n';
  }
}

void write_confusion_csv(const MetricsReport& m, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError(fmt::format("cannot write {}", path.string()));
  write_confusion_csv(m, f);
}

}  // namespace bh::ml
