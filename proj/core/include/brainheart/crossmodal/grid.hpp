#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brainheart/data/feature_table.hpp"
#include "brainheart/ml/anova.hpp"
#include "brainheart/ml/classifier.hpp"
#include "brainheart/ml/pipeline.hpp"

namespace bh::crossmodal {

enum class FeatureSet { hrv, catch22_ecg, synthetic_hrv, hrv_plus_synthetic, eeg };
enum class Task { multiclass, binary };

inline constexpr FeatureSet kAllFeatureSets[] = {FeatureSet::hrv, FeatureSet::catch22_ecg, FeatureSet::synthetic_hrv,
                                                 FeatureSet::hrv_plus_synthetic, FeatureSet::eeg};

/// Display names: HRV, Catch22-ECG, SyntheticHRV, HRV+SyntheticHRV, EEG.
std::string_view to_string(FeatureSet set);
/// File-system friendly: hrv, catch22_ecg, synthetic_hrv, hrv_synthetic_hrv, eeg.
std::string_view slug(FeatureSet set);
FeatureSet parse_feature_set(std::string_view text);

std::string_view to_string(Task task);
Task parse_task(std::string_view text);

/// multiclass: Memorize trials labelled Five/Nine/Thirteen.
/// binary: every trial labelled JustListen/Memorize (all loads pooled).
ml::Target task_target(Task task);
std::vector<std::string> task_classes(Task task);
FeatureTable task_rows(const FeatureTable& table, Task task);
ml::Dataset task_dataset(const FeatureTable& table, Task task);

/// Feature tables by role. hrv and synthetic_hrv both carry the five HRV
/// columns; synthetic rows share the trial key of the real trial they were
/// derived from.
struct GridData {
  std::optional<FeatureTable> hrv;
  std::optional<FeatureTable> catch22_ecg;
  std::optional<FeatureTable> synthetic_hrv;
  std::optional<FeatureTable> eeg;
};

struct GridPaths {
  std::filesystem::path hrv;
  std::filesystem::path catch22_ecg;
  std::filesystem::path synthetic_hrv;
  std::filesystem::path eeg;
};

/// Tables a feature set draws on.
std::vector<std::string> required_tables(FeatureSet set);

/// Reads the tables needed by `sets`. Throws DataError naming every missing file.
GridData load_grid_data(const GridPaths& paths, const std::vector<FeatureSet>& sets);

struct ExperimentGrid {
  std::vector<FeatureSet> feature_sets{std::begin(kAllFeatureSets), std::end(kAllFeatureSets)};
  std::vector<Task> tasks{Task::multiclass, Task::binary};
  std::vector<ml::ClassifierKind> classifiers{ml::ClassifierKind::forest, ml::ClassifierKind::gbt};
  ml::ClassifierConfig classifier;
  /// folds, subject grouping, SMOTE and jobs; the seed field is ignored in
  /// favour of `seed`.
  ml::CvOptions cv;
  /// Null control: labels are permuted within each cell before splitting.
  bool permute_labels = false;
  std::uint64_t seed = 42;
};

struct CellResult {
  FeatureSet feature_set;
  Task task;
  ml::ClassifierKind classifier;
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t rows = 0;
  std::size_t features = 0;
  ml::CvResult cv;
};

struct AnovaEntry {
  /// "across_classifiers" (fixed feature set) or "across_feature_sets" (fixed classifier).
  std::string scope;
  Task task;
  std::string fixed;
  std::vector<std::string> groups;
  ml::AnovaResult anova;
  std::vector<ml::PairwiseComparison> pairwise;
};

struct GridReport {
  std::vector<CellResult> cells;
  std::vector<AnovaEntry> anova;
};

/// Cell i (feature set outermost, then task, then classifier) trains with seed
/// mix_seed(grid.seed, i). Folds depend only on grid.seed and the cell's rows,
/// so classifiers on the same feature set and task see identical folds.
GridReport run_experiment_grid(const ExperimentGrid& grid, const GridData& data);

/// ANOVA over fold accuracies; groups with fewer than 2 folds are skipped.
std::vector<AnovaEntry> compare_cells(const std::vector<CellResult>& cells);

std::string summary_json(const GridReport& report, const ExperimentGrid& grid);
std::string anova_json(const GridReport& report);

/// Writes summary.json, anova.json and cells/<set>_<task>_<classifier>/
/// {metrics.json, confusion.csv}.
void write_report_bundle(const GridReport& report, const ExperimentGrid& grid, const std::filesystem::path& dir);

}  // namespace bh::crossmodal
