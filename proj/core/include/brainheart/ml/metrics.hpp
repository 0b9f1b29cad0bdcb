#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bh::ml {

struct MetricsReport {
  std::vector<std::string> class_names;
  /// confusion[true][predicted].
  std::vector<std::vector<std::size_t>> confusion;
  std::size_t total = 0;
  double accuracy = 0.0;
  std::vector<std::size_t> support;
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> f1;
  /// Set where the denominator was zero and the value was reported as 0.
  std::vector<bool> precision_zero_division;
  std::vector<bool> recall_zero_division;
  std::vector<bool> f1_zero_division;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;
};

/// Labels are indices into class_names. Throws ValidationError for a length
/// mismatch, empty input or a label outside the class set.
MetricsReport evaluate(std::span<const int> y_true, std::span<const int> y_pred,
                       const std::vector<std::string>& class_names);

std::string metrics_to_json(const MetricsReport& report);
MetricsReport metrics_from_json(const std::string& text);

/// Header "true\predicted,<names...>", then one row per true class.
void write_confusion_csv(const MetricsReport& report, std::ostream& out);
void write_confusion_csv(const MetricsReport& report, const std::filesystem::path& path);

}  // namespace bh::ml
