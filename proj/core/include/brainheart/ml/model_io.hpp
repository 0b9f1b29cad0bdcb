#pragma once

#include <filesystem>
#include <string>

#include "brainheart/ml/classifier.hpp"
#include "brainheart/ml/forest.hpp"
#include "brainheart/ml/gbt.hpp"

namespace bh::ml {

inline constexpr int kModelFormatVersion = 1;

/// JSON tree dumps: {"format_version", "kind", ..., "trees": [{"n_outputs",
/// "nodes": [...]}]}. Internal nodes carry feature, threshold, left, right and
/// gain; leaves carry "leaf": [values]. Doubles round-trip exactly.
std::string to_json(const ForestModel& model);
std::string to_json(const GbtModel& model);
std::string to_json(const MultiGbtModel& model);
std::string to_json(const Classifier& model);

/// Throw DataError on malformed input, wrong kind or unsupported version.
ForestModel forest_from_json(const std::string& text);
GbtModel gbt_from_json(const std::string& text);
MultiGbtModel multi_gbt_from_json(const std::string& text);
Classifier classifier_from_json(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace bh::ml
