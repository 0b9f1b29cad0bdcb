#pragma once

#include <span>
#include <string>

#include "brainheart/ml/metrics.hpp"

namespace bhx {

/// Heat-map of confusion[true][predicted] with counts and row-normalised shading.
std::string confusion_svg(const bh::ml::MetricsReport& report, const std::string& title);

/// RR(n) against RR(n+1) with the identity line and the SD1/SD2 ellipse
/// centred on the mean interval.
std::string poincare_svg(std::span<const double> intervals_ms, const std::string& title);

/// Accuracy table (mean ± sd per feature set and classifier/task column),
/// followed by the ANOVA summaries. Inputs are summary.json and anova.json.
std::string table_markdown(const std::string& summary_json, const std::string& anova_json);

}  // namespace bhx
