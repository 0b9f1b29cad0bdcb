#include "brainheart/crossmodal/crossmodal.hpp"

#include <algorithm>
#include <map>
#include <regex>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

#include "brainheart/features/hrv.hpp"
#include "brainheart/ml/model_io.hpp"
#include "brainheart/util/error.hpp"
#include "brainheart/util/log.hpp"
#include "brainheart/util/parallel.hpp"
#include "brainheart/util/random.hpp"

namespace bh::crossmodal {

namespace {

std::vector<std::string> hrv_input_names() { return {kHrvFeatureNames.begin(), kHrvFeatureNames.end()}; }

std::map<TrialKey, std::size_t> index_keys(const FeatureTable& t, const char* side, std::vector<std::string>& problems) {
  std::map<TrialKey, std::size_t> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!out.emplace(TrialKey(t.labels[i]), i).second) {
      problems.push_back(fmt::format("duplicate {} key {}", side, to_string(TrialKey(t.labels[i]))));
    }
  }
  return out;
}

ml::Matrix matrix_of(const FeatureTable& t) {
  auto m = ml::Matrix::from_rows(t.rows);
  m.cols = t.width();
  return m;
}

}  // namespace

AlignedTables align_tables(const FeatureTable& hrv, const FeatureTable& eeg) {
  hrv.validate();
  eeg.validate();
  std::vector<std::string> problems;
  const auto hk = index_keys(hrv, "hrv", problems);
  const auto ek = index_keys(eeg, "eeg", problems);
  for (const auto& [k, i] : hk) {
    if (!ek.count(k)) problems.push_back(fmt::format("hrv key {} has no eeg row", to_string(k)));
  }
  for (const auto& [k, i] : ek) {
    if (!hk.count(k)) problems.push_back(fmt::format("eeg key {} has no hrv row", to_string(k)));
  }
  if (!problems.empty()) throw DataError(fmt::format("alignment failure: {}", fmt::join(problems, "; ")));
  std::vector<std::size_t> hi, ei;
  for (const auto& [k, i] : hk) {
    hi.push_back(i);
    ei.push_back(ek.at(k));
  }
  return {take_rows(hrv, hi), take_rows(eeg, ei)};
}

FeatureTable average_channels(const FeatureTable& eeg) {
  static const std::regex pattern(R"(ch(\d+)_(.+))");
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t c = 0; c < eeg.width(); ++c) {
    std::smatch m;
    if (!std::regex_match(eeg.feature_names[c], m, pattern)) continue;
    const auto name = m[2].str();
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      names.push_back(name);
      members.push_back({c});
    } else {
      members[static_cast<std::size_t>(it - names.begin())].push_back(c);
    }
  }
  if (names.empty()) throw ValidationError("no per-channel columns (ch<N>_<feature>) to average");
  FeatureTable out;
  out.feature_names = names;
  for (std::size_t r = 0; r < eeg.size(); ++r) {
    std::vector<double> row;
    for (const auto& cols : members) {
      double s = 0.0;
      for (const auto c : cols) s += eeg.rows[r][c];
      row.push_back(s / static_cast<double>(cols.size()));
    }
    out.append(std::move(row), eeg.labels[r]);
  }
  return out;
}

CrossModalModel train_crossmodal(const FeatureTable& hrv, const FeatureTable& eeg, const CrossModalOptions& options) {
  if (hrv.feature_names != hrv_input_names()) {
    throw DataError(fmt::format("name mismatch: HRV inputs must be {}, got {}", fmt::join(kHrvFeatureNames, ","),
                                fmt::join(hrv.feature_names, ",")));
  }
  const auto aligned = align_tables(hrv, eeg);
  if (aligned.hrv.size() < kMinAlignedPairs) {
    throw DataError(fmt::format("too few aligned pairs: {} (need {})", aligned.hrv.size(), kMinAlignedPairs));
  }

  CrossModalModel model;
  model.hrv_names = aligned.hrv.feature_names;
  model.eeg_names = aligned.eeg.feature_names;
  model.target = options.target;

  auto reg_cfg = options.regressor;
  reg_cfg.objective = ml::Objective::squared_error_regression;
  reg_cfg.seed = mix_seed(options.seed, 1);
  model.regressor = ml::train_gbt_multi(matrix_of(aligned.hrv), matrix_of(aligned.eeg), reg_cfg, options.jobs);
  model.regressor.input_names = model.hrv_names;
  model.regressor.output_names = model.eeg_names;

  const auto eeg_data = ml::make_dataset(aligned.eeg, options.target);
  ml::FoldAudit audit;
  const auto train = ml::oversample_training(eeg_data, options.smote, mix_seed(options.seed, 2), audit);
  auto cls_cfg = options.classifier;
  cls_cfg.forest.seed = mix_seed(options.seed, 3);
  cls_cfg.gbt.seed = mix_seed(options.seed, 3);
  model.eeg_classifier = ml::train_classifier(train, cls_cfg, options.jobs);
  model.eeg_classifier.set_feature_names(model.eeg_names);
  return model;
}

CrossModalPrediction predict_crossmodal(const CrossModalModel& model, const FeatureTable& hrv, bool score) {
  if (hrv.feature_names != model.hrv_names) {
    throw DataError(fmt::format("name mismatch: model expects [{}], table has [{}]", fmt::join(model.hrv_names, ","),
                                fmt::join(hrv.feature_names, ",")));
  }
  if (model.eeg_classifier.feature_names() != model.eeg_names || model.regressor.output_names != model.eeg_names) {
    throw DataError("name mismatch: regressor outputs differ from the EEG classifier's inputs");
  }
  hrv.validate();
  CrossModalPrediction out;
  out.regressed = model.regressor.predict(matrix_of(hrv));
  out.predicted = model.eeg_classifier.predict(out.regressed);
  if (score) {
    const auto truth = ml::make_dataset(hrv, model.target, model.eeg_classifier.class_names());
    out.metrics = ml::evaluate(truth.y, out.predicted, truth.class_names);
  }
  return out;
}

ml::CvResult cross_validate_crossmodal(const FeatureTable& hrv, const FeatureTable& eeg, const CrossModalOptions& options,
                                       int folds) {
  const auto aligned = align_tables(hrv, eeg);
  const auto data = ml::make_dataset(aligned.eeg, options.target);
  ml::CvOptions cv;
  cv.folds = folds;
  cv.seed = options.seed;
  const auto split = ml::make_folds(data, cv, {});

  ml::CvResult result;
  result.fold_accuracy.resize(split.size());
  result.audit.resize(split.size());
  result.predictions.assign(data.size(), -1);
  // Inner work is already parallel across regression outputs and trees.
  for (std::size_t f = 0; f < split.size(); ++f) {
    auto& audit = result.audit[f];
    audit.test = split[f];
    audit.train = ml::training_indices(split, f, data.size());
    auto fold_options = options;
    fold_options.seed = mix_seed(options.seed, f);
    const auto model = train_crossmodal(take_rows(aligned.hrv, audit.train), take_rows(aligned.eeg, audit.train), fold_options);
    const auto pred = predict_crossmodal(model, take_rows(aligned.hrv, audit.test));
    // Map the fold model's class indices onto the full class list.
    const auto& names = model.eeg_classifier.class_names();
    std::size_t hit = 0;
    for (std::size_t i = 0; i < pred.predicted.size(); ++i) {
      const auto& name = names[static_cast<std::size_t>(pred.predicted[i])];
      const int label = static_cast<int>(std::find(data.class_names.begin(), data.class_names.end(), name) - data.class_names.begin());
      result.predictions[audit.test[i]] = label;
      hit += label == data.y[audit.test[i]];
    }
    result.fold_accuracy[f] = static_cast<double>(hit) / static_cast<double>(audit.test.size());
  }
  result.pooled = ml::evaluate(data.y, result.predictions, data.class_names);
  return result;
}

std::string to_json(const CrossModalModel& model) {
  nlohmann::ordered_json j;
  j["format_version"] = ml::kModelFormatVersion;
  j["kind"] = "crossmodal";
  j["target"] = std::string(ml::to_string(model.target));
  j["hrv_names"] = model.hrv_names;
  j["eeg_names"] = model.eeg_names;
  j["regressor"] = nlohmann::ordered_json::parse(ml::to_json(model.regressor));
  j["eeg_classifier"] = nlohmann::ordered_json::parse(ml::to_json(model.eeg_classifier));
  return j.dump() + "\n";
}

CrossModalModel crossmodal_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.value("format_version", 0) != ml::kModelFormatVersion || j.value("kind", "") != "crossmodal") {
      throw DataError("cross-modal model JSON: wrong kind or version");
    }
    CrossModalModel m;
    m.target = ml::parse_target(j.at("target").get<std::string>());
    m.hrv_names = j.at("hrv_names").get<std::vector<std::string>>();
    m.eeg_names = j.at("eeg_names").get<std::vector<std::string>>();
    m.regressor = ml::multi_gbt_from_json(j.at("regressor").dump());
    m.eeg_classifier = ml::classifier_from_json(j.at("eeg_classifier").dump());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("cross-modal model JSON: {}", e.what()));
  }
}

}  // namespace bh::crossmodal
