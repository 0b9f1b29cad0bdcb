#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "brainheart/crossmodal/grid.hpp"
#include "brainheart/features/assemble.hpp"
#include "brainheart/ml/classifier.hpp"
#include "brainheart/ml/pipeline.hpp"
#include "brainheart/preprocess/epoch.hpp"
#include "brainheart/preprocess/filter.hpp"
#include "brainheart/psvsdg/calibrate.hpp"

namespace bhx {

enum class PreprocessMode { eeg, ecg, rr };

struct PreprocessSection {
  std::filesystem::path in, out;
  PreprocessMode mode = PreprocessMode::eeg;
  bh::FilterSpec filter;
  bool filter_enabled = true;
  bh::EpochSpec epoch;
  bool baseline = true;
  bool reject_artifacts = true;
  double artifact_limit = bh::kDefaultArtifactLimit;
  bool zscore = true;
  bool average_reference = false;
};

struct ExtractSection {
  std::filesystem::path in, out;
  bh::FeatureMode mode = bh::FeatureMode::hrv;
};

struct SynthSection {
  std::filesystem::path spec, in, out, spec_out;
  double noise_sd = 0.0;
  std::size_t window_beats = 30;
  bh::CalibrationOptions calibration;
};

struct TrainSection {
  std::filesystem::path in, out;
};

struct CrossModalSection {
  std::filesystem::path hrv, eeg, out;
  bool channel_average = true;
  int folds = 5;
  int regressor_trees = 500;
  int regressor_depth = 6;
  double regressor_learning_rate = 0.1;
};

struct GridSection {
  bh::crossmodal::GridPaths paths;
  std::filesystem::path out;
  std::vector<bh::crossmodal::FeatureSet> feature_sets{std::begin(bh::crossmodal::kAllFeatureSets),
                                                       std::end(bh::crossmodal::kAllFeatureSets)};
  std::vector<bh::crossmodal::Task> tasks{bh::crossmodal::Task::multiclass, bh::crossmodal::Task::binary};
  std::vector<bh::ml::ClassifierKind> classifiers{bh::ml::ClassifierKind::forest, bh::ml::ClassifierKind::gbt};
  bool permute_labels = false;
};

struct ReportSection {
  std::filesystem::path in, out;
  /// Optional RR tensor (ms) to draw Poincaré clouds from.
  std::filesystem::path rr;
};

struct PipelineConfig {
  std::filesystem::path source;  // empty when built from defaults
  std::uint64_t seed = 42;
  int jobs = 1;
  std::string log_level = "info";
  bh::crossmodal::Task task = bh::crossmodal::Task::multiclass;
  bh::ml::ClassifierKind classifier = bh::ml::ClassifierKind::forest;

  PreprocessSection preprocess;
  ExtractSection extract;
  SynthSection synth;
  bh::ml::ForestConfig forest;
  bh::ml::GbtConfig gbt;
  bh::ml::CvOptions cv;
  TrainSection train;
  CrossModalSection crossmodal;
  GridSection grid;
  ReportSection report;
};

std::string_view to_string(PreprocessMode mode);
PreprocessMode parse_preprocess_mode(std::string_view text);

/// Sectioned key = value file ('#' or ';' comments; strings may be quoted;
/// lists are comma separated, optionally in brackets). Unknown sections or
/// keys and bad values raise bh::ValidationError naming "section.key".
/// Relative paths resolve against the config file's directory.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);

/// Every effective setting as sorted "section.key = value" lines; the input
/// to the manifest's config hash.
std::string canonical_text(const PipelineConfig& cfg);

}  // namespace bhx
