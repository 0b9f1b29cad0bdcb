#include "brainheart/crossmodal/grid.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

#include "brainheart/features/hrv.hpp"
#include "brainheart/ml/model_io.hpp"
#include "brainheart/util/error.hpp"
#include "brainheart/util/log.hpp"
#include "brainheart/util/random.hpp"

namespace bh::crossmodal {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kSetNames[] = {"HRV", "Catch22-ECG", "SyntheticHRV", "HRV+SyntheticHRV", "EEG"};
constexpr std::string_view kSetSlugs[] = {"hrv", "catch22_ecg", "synthetic_hrv", "hrv_synthetic_hrv", "eeg"};

std::string cell_name(const CellResult& c) {
  return fmt::format("{}_{}_{}", slug(c.feature_set), to_string(c.task), ml::to_string(c.classifier));
}

std::string column_name(ml::ClassifierKind k, Task t) { return fmt::format("{}/{}", ml::to_string(k), to_string(t)); }

// Shuffles labels; augmentation rows take their source row's new label.
void permute(ml::Dataset& data, ml::Augmentation* aug, std::uint64_t seed) {
  Rng rng(seed);
  rng.shuffle(data.y.begin(), data.y.end());
  if (!aug) return;
  for (std::size_t i = 0; i < aug->data.size(); ++i) {
    const auto src = aug->source[i];
    if (src != ml::Augmentation::kNoSource) {
      aug->data.y[i] = data.y[src];
    } else {
      aug->data.y[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(data.n_classes)));
    }
  }
}

const FeatureTable& need(const std::optional<FeatureTable>& t, const char* role) {
  if (!t) throw DataError(fmt::format("missing feature tables: {}", role));
  return *t;
}

void check_hrv_columns(const FeatureTable& t, const char* role) {
  const std::vector<std::string> want(kHrvFeatureNames.begin(), kHrvFeatureNames.end());
  if (t.feature_names != want) {
    throw DataError(fmt::format("{} table must have columns {}, got {}", role, fmt::join(want, ","), fmt::join(t.feature_names, ",")));
  }
}

}  // namespace

std::string_view to_string(FeatureSet set) { return kSetNames[static_cast<int>(set)]; }
std::string_view slug(FeatureSet set) { return kSetSlugs[static_cast<int>(set)]; }

FeatureSet parse_feature_set(std::string_view text) {
  for (const auto s : kAllFeatureSets) {
    if (text == to_string(s) || text == slug(s)) return s;
  }
  throw ValidationError(fmt::format("unknown feature set '{}'", text));
}

std::string_view to_string(Task task) { return task == Task::multiclass ? "multiclass" : "binary"; }

Task parse_task(std::string_view text) {
  if (text == "multiclass") return Task::multiclass;
  if (text == "binary") return Task::binary;
  throw ValidationError(fmt::format("unknown task '{}' (expected multiclass or binary)", text));
}

ml::Target task_target(Task task) { return task == Task::multiclass ? ml::Target::subcondition : ml::Target::condition; }

std::vector<std::string> task_classes(Task task) {
  if (task == Task::multiclass) {
    return {std::string(to_string(Subcondition::five)), std::string(to_string(Subcondition::nine)),
            std::string(to_string(Subcondition::thirteen))};
  }
  return {std::string(to_string(Condition::just_listen)), std::string(to_string(Condition::memorize))};
}

FeatureTable task_rows(const FeatureTable& table, Task task) {
  if (task == Task::binary) return table;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.labels[i].condition == Condition::memorize) keep.push_back(i);
  }
  return take_rows(table, keep);
}

ml::Dataset task_dataset(const FeatureTable& table, Task task) {
  return ml::make_dataset(task_rows(table, task), task_target(task), task_classes(task));
}

std::vector<std::string> required_tables(FeatureSet set) {
  switch (set) {
    case FeatureSet::hrv: return {"hrv"};
    case FeatureSet::catch22_ecg: return {"catch22_ecg"};
    case FeatureSet::synthetic_hrv: return {"synthetic_hrv"};
    case FeatureSet::hrv_plus_synthetic: return {"hrv", "synthetic_hrv"};
    case FeatureSet::eeg: return {"eeg"};
  }
  return {};
}

GridData load_grid_data(const GridPaths& paths, const std::vector<FeatureSet>& sets) {
  const std::map<std::string, const std::filesystem::path*> where{
      {"hrv", &paths.hrv}, {"catch22_ecg", &paths.catch22_ecg}, {"synthetic_hrv", &paths.synthetic_hrv}, {"eeg", &paths.eeg}};
  std::vector<std::string> roles;
  for (const auto s : sets) {
    for (const auto& r : required_tables(s)) {
      if (std::find(roles.begin(), roles.end(), r) == roles.end()) roles.push_back(r);
    }
  }
  std::vector<std::string> missing;
  for (const auto& r : roles) {
    const auto& p = *where.at(r);
    if (p.empty() || !std::filesystem::is_regular_file(p)) missing.push_back(fmt::format("{} ({})", r, p.empty() ? "no path" : p.string()));
  }
  if (!missing.empty()) throw DataError(fmt::format("missing feature tables: {}", fmt::join(missing, ", ")));
  GridData d;
  for (const auto& r : roles) {
    auto t = read_feature_csv(*where.at(r));
    if (r == "hrv") d.hrv = std::move(t);
    if (r == "catch22_ecg") d.catch22_ecg = std::move(t);
    if (r == "synthetic_hrv") d.synthetic_hrv = std::move(t);
    if (r == "eeg") d.eeg = std::move(t);
  }
  return d;
}

GridReport run_experiment_grid(const ExperimentGrid& grid, const GridData& data) {
  if (grid.feature_sets.empty() || grid.tasks.empty() || grid.classifiers.empty()) {
    throw ValidationError("grid needs at least one feature set, task and classifier");
  }
  {
    std::vector<std::string> missing;
    for (const auto s : grid.feature_sets) {
      for (const auto& r : required_tables(s)) {
        const bool have = (r == "hrv" && data.hrv) || (r == "catch22_ecg" && data.catch22_ecg) ||
                          (r == "synthetic_hrv" && data.synthetic_hrv) || (r == "eeg" && data.eeg);
        if (!have && std::find(missing.begin(), missing.end(), r) == missing.end()) missing.push_back(r);
      }
    }
    if (!missing.empty()) throw DataError(fmt::format("missing feature tables: {}", fmt::join(missing, ", ")));
  }

  GridReport report;
  std::size_t index = 0;
  for (const auto set : grid.feature_sets) {
    for (const auto task : grid.tasks) {
      ml::Dataset ds;
      std::optional<ml::Augmentation> aug;
      std::vector<std::string> groups;
      const FeatureTable* base = nullptr;
      switch (set) {
        case FeatureSet::hrv: base = &need(data.hrv, "hrv"); break;
        case FeatureSet::catch22_ecg: base = &need(data.catch22_ecg, "catch22_ecg"); break;
        case FeatureSet::synthetic_hrv: base = &need(data.synthetic_hrv, "synthetic_hrv"); break;
        case FeatureSet::hrv_plus_synthetic: base = &need(data.hrv, "hrv"); break;
        case FeatureSet::eeg: base = &need(data.eeg, "eeg"); break;
      }
      const auto rows = task_rows(*base, task);
      ds = ml::make_dataset(rows, task_target(task), task_classes(task));
      for (const auto& m : rows.labels) groups.push_back(m.subject_id);
      if (set == FeatureSet::hrv_plus_synthetic) {
        const auto& syn = need(data.synthetic_hrv, "synthetic_hrv");
        check_hrv_columns(*base, "hrv");
        check_hrv_columns(syn, "synthetic_hrv");
        const auto syn_rows = task_rows(syn, task);
        std::map<TrialKey, std::size_t> real;
        for (std::size_t i = 0; i < rows.size(); ++i) real.emplace(TrialKey(rows.labels[i]), i);
        aug.emplace();
        aug->data = ml::make_dataset(syn_rows, task_target(task), task_classes(task));
        for (const auto& m : syn_rows.labels) {
          const auto it = real.find(TrialKey(m));
          aug->source.push_back(it == real.end() ? ml::Augmentation::kNoSource : it->second);
        }
      }

      for (const auto kind : grid.classifiers) {
        CellResult cell;
        cell.feature_set = set;
        cell.task = task;
        cell.classifier = kind;
        cell.index = index;
        cell.seed = mix_seed(grid.seed, index);
        ++index;
        cell.rows = ds.size();
        cell.features = ds.x.cols;

        auto cell_data = ds;
        auto cell_aug = aug;
        if (grid.permute_labels) permute(cell_data, cell_aug ? &*cell_aug : nullptr, cell.seed);

        auto cfg = grid.classifier;
        cfg.kind = kind;
        cfg.forest.seed = cell.seed;
        cfg.gbt.seed = cell.seed;
        auto cv = grid.cv;
        cv.seed = grid.seed;
        logger().info("grid cell {}: {} / {} / {} ({} rows, {} features)", cell.index, to_string(set), to_string(task),
                      ml::to_string(kind), cell.rows, cell.features);
        cell.cv = ml::cross_validate(cell_data, cfg, cv, groups, cell_aug ? &*cell_aug : nullptr);
        report.cells.push_back(std::move(cell));
      }
    }
  }
  report.anova = compare_cells(report.cells);
  return report;
}

std::vector<AnovaEntry> compare_cells(const std::vector<CellResult>& cells) {
  std::vector<AnovaEntry> out;
  auto add = [&](const char* scope, Task task, std::string fixed, const std::vector<const CellResult*>& members,
                 auto&& group_name) {
    if (members.size() < 2) return;
    std::vector<std::vector<double>> groups;
    AnovaEntry e;
    e.scope = scope;
    e.task = task;
    e.fixed = std::move(fixed);
    for (const auto* c : members) {
      if (c->cv.fold_accuracy.size() < 2) return;
      groups.push_back(c->cv.fold_accuracy);
      e.groups.push_back(group_name(*c));
    }
    e.anova = ml::anova_oneway(groups);
    e.pairwise = ml::pairwise_welch_holm(groups);
    out.push_back(std::move(e));
  };

  std::vector<Task> tasks;
  std::vector<FeatureSet> sets;
  std::vector<ml::ClassifierKind> kinds;
  for (const auto& c : cells) {
    if (std::find(tasks.begin(), tasks.end(), c.task) == tasks.end()) tasks.push_back(c.task);
    if (std::find(sets.begin(), sets.end(), c.feature_set) == sets.end()) sets.push_back(c.feature_set);
    if (std::find(kinds.begin(), kinds.end(), c.classifier) == kinds.end()) kinds.push_back(c.classifier);
  }
  for (const auto task : tasks) {
    for (const auto set : sets) {
      std::vector<const CellResult*> m;
      for (const auto& c : cells) {
        if (c.task == task && c.feature_set == set) m.push_back(&c);
      }
      add("across_classifiers", task, std::string(to_string(set)), m,
          [](const CellResult& c) { return std::string(ml::to_string(c.classifier)); });
    }
    for (const auto kind : kinds) {
      std::vector<const CellResult*> m;
      for (const auto& c : cells) {
        if (c.task == task && c.classifier == kind) m.push_back(&c);
      }
      add("across_feature_sets", task, std::string(ml::to_string(kind)), m,
          [](const CellResult& c) { return std::string(to_string(c.feature_set)); });
    }
  }
  return out;
}

std::string summary_json(const GridReport& report, const ExperimentGrid& grid) {
  json j;
  j["format_version"] = 1;
  j["seed"] = grid.seed;
  j["folds"] = grid.cv.folds;
  j["subject_wise"] = grid.cv.group_by_subject;
  j["smote"] = grid.cv.smote.enabled;
  j["permuted_labels"] = grid.permute_labels;

  std::vector<std::string> columns;
  for (const auto k : grid.classifiers) {
    for (const auto t : grid.tasks) columns.push_back(column_name(k, t));
  }
  j["columns"] = columns;
  json rows = json::array();
  for (const auto set : grid.feature_sets) {
    json acc = json::object();
    for (const auto& c : report.cells) {
      if (c.feature_set == set) acc[column_name(c.classifier, c.task)] = c.cv.mean_accuracy();
    }
    rows.push_back({{"feature_set", std::string(to_string(set))}, {"accuracy", std::move(acc)}});
  }
  j["table"] = std::move(rows);

  json cells = json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"name", cell_name(c)},
                     {"feature_set", std::string(to_string(c.feature_set))},
                     {"task", std::string(to_string(c.task))},
                     {"classifier", std::string(ml::to_string(c.classifier))},
                     {"seed", c.seed},
                     {"rows", c.rows},
                     {"features", c.features},
                     {"accuracy_mean", c.cv.mean_accuracy()},
                     {"accuracy_sd", c.cv.sd_accuracy()},
                     {"fold_accuracy", c.cv.fold_accuracy},
                     {"macro_f1", c.cv.pooled.macro_f1},
                     {"chance", 1.0 / static_cast<double>(c.cv.pooled.class_names.size())}});
  }
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

std::string anova_json(const GridReport& report) {
  json a = json::array();
  for (const auto& e : report.anova) {
    json pairs = json::array();
    for (const auto& p : e.pairwise) {
      pairs.push_back({{"a", e.groups[p.a]},
                       {"b", e.groups[p.b]},
                       {"mean_difference", p.mean_difference},
                       {"t_stat", p.t_stat},
                       {"df", p.df},
                       {"p_value", p.p_value},
                       {"p_holm", p.p_holm}});
    }
    a.push_back({{"scope", e.scope},
                 {"task", std::string(to_string(e.task))},
                 {"fixed", e.fixed},
                 {"groups", e.groups},
                 {"f_stat", e.anova.f_stat},
                 {"df_between", e.anova.df_between},
                 {"df_within", e.anova.df_within},
                 {"p_value", e.anova.p_value},
                 {"pairwise_welch_holm", std::move(pairs)}});
  }
  json j;
  j["format_version"] = 1;
  j["comparisons"] = std::move(a);
  return j.dump(2) + "\n";
}

void write_report_bundle(const GridReport& report, const ExperimentGrid& grid, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "cells");
  ml::write_text(dir / "summary.json", summary_json(report, grid));
  ml::write_text(dir / "anova.json", anova_json(report));
  for (const auto& c : report.cells) {
    const auto cdir = dir / "cells" / cell_name(c);
    std::filesystem::create_directories(cdir);
    ml::write_text(cdir / "metrics.json", ml::metrics_to_json(c.cv.pooled));
    ml::write_confusion_csv(c.cv.pooled, cdir / "confusion.csv");
  }
}

}  // namespace bh::crossmodal
