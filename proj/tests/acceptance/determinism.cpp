#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "acceptance/criteria.hpp"
#include "acceptance/end_to_end.hpp"
#include "brainheart/crossmodal/crossmodal.hpp"
#include "brainheart/crossmodal/grid.hpp"
#include "brainheart/data/bhix.hpp"
#include "brainheart/features/assemble.hpp"
#include "brainheart/ml/classifier.hpp"
#include "brainheart/ml/model_io.hpp"
#include "brainheart/preprocess/epoch.hpp"
#include "brainheart/preprocess/filter.hpp"
#include "support/crossmodal_data.hpp"
#include "support/grid_data.hpp"
#include "support/ml_data.hpp"

namespace fs = std::filesystem;

namespace bh::acceptance {
namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Concatenated bytes of every file under dir, in path order.
std::string tree_bytes(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string out;
  for (const auto& f : files) out += fs::relative(f, dir).string() + '\n' + slurp(f);
  return out;
}

std::string tensor_bytes(const TrialSet& set, const fs::path& dir) {
  write_tensor(set.tensor, set.meta, dir);
  return tree_bytes(dir);
}

std::string csv_text(const FeatureTable& t) {
  std::ostringstream out;
  write_feature_csv(t, out);
  return out.str();
}

// Two-channel 250 Hz recording: alpha, drift and noise, events every 12 s.
TrialSet preprocess_stage(const fs::path& dir) {
  const double rate = 250.0;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> noise(0.0, 5.0);
  std::vector<std::vector<double>> rec(2, std::vector<double>(static_cast<std::size_t>(120 * rate)));
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < rec[c].size(); ++i) {
      const double t = static_cast<double>(i) / rate;
      rec[c][i] = 20.0 * std::sin(2 * std::numbers::pi * 10.0 * t + c) + 30.0 * std::sin(0.2 * t) + noise(rng);
    }
  }
  for (auto& ch : rec) ch = apply_filter(ch, rate, FilterSpec{});
  std::vector<double> onsets;
  for (double t = 6.0; t < 110.0; t += 12.0) onsets.push_back(t);
  const EpochSpec spec;
  auto ep = epoch_signal(rec, onsets, spec, rate);
  const auto clean = reject_artifacts(baseline_correct(ep.epochs, spec));
  TrialSet out{zscore_epochs(clean.kept), {}};
  for (const auto k : clean.kept_indices) {
    TrialMeta m;
    m.subject_id = "sub-01";
    m.condition = Condition::memorize;
    m.subcondition = Subcondition::nine;
    m.trial_index = static_cast<int>(ep.kept[k]);
    m.event_onsets = {onsets[ep.kept[k]]};
    out.meta.push_back(m);
  }
  tensor_bytes(out, dir);
  return out;
}

}  // namespace

Outcome determinism() {
  Checker check;
  const auto root = fs::temp_directory_path() / ("bh_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  int stages = 0;
  const auto same = [&](const std::string& stage, const std::function<std::string(int)>& run) {
    ++stages;
    const auto a = run(0), b = run(1);
    check.expect(!a.empty() && a == b, stage + " output differs between runs");
  };

  same("preprocess", [&](int r) {
    const auto dir = root / ("pre" + std::to_string(r));
    preprocess_stage(dir);
    return tree_bytes(dir);
  });

  const auto specs = three_class_specs(8, 11);
  same("synth", [&](int r) {
    BatchOptions o;
    o.jobs = r + 1;  // job count must not matter
    return tensor_bytes(generate_synthetic_batch(specs, o).trials, root / ("syn" + std::to_string(r)));
  });

  const auto synth = generate_synthetic_batch(specs).trials;
  same("extract hrv", [&](int r) { return csv_text(assemble_features(synth, FeatureMode::hrv, r + 1)); });
  same("extract catch22", [&](int r) { return csv_text(assemble_features(synth, FeatureMode::catch22, r + 1)); });
  same("extract bandpower", [&](int r) {
    return csv_text(assemble_features(preprocess_stage(root / ("bp" + std::to_string(r))), FeatureMode::bandpower));
  });

  const auto blobs = test::blobs(40, 12);
  for (const auto kind : {ml::ClassifierKind::forest, ml::ClassifierKind::gbt}) {
    same(std::string("train ") + std::string(ml::to_string(kind)), [&](int r) {
      ml::ClassifierConfig cfg;
      cfg.kind = kind;
      cfg.forest.n_trees = cfg.gbt.n_trees = 60;
      return ml::to_json(ml::train_classifier(blobs, cfg, r + 1));
    });
  }

  const auto paired = test::paired_fixture(16, true, 13);
  same("crossmodal", [&](int r) {
    crossmodal::CrossModalOptions o;
    o.regressor.n_trees = o.classifier.forest.n_trees = 40;
    o.jobs = r + 1;
    auto text = crossmodal::to_json(crossmodal::train_crossmodal(paired.hrv, paired.eeg, o));
    const auto cv = crossmodal::cross_validate_crossmodal(paired.hrv, paired.eeg, o, 3);
    for (const int p : cv.predictions) text += std::to_string(p);
    return text;
  });

  const auto grid_data = test::grid_tables(6, 2, 1.0, 14);
  same("grid", [&](int r) {
    crossmodal::ExperimentGrid g;
    g.classifier.forest.n_trees = g.classifier.gbt.n_trees = 30;
    g.cv.folds = 3;
    g.cv.jobs = r + 1;
    const auto report = crossmodal::run_experiment_grid(g, grid_data);
    const auto dir = root / ("grid" + std::to_string(r));
    crossmodal::write_report_bundle(report, g, dir);
    return tree_bytes(dir);
  });

  fs::remove_all(root);
  return check.outcome(std::to_string(stages) + " stages byte-identical on re-run (varying job counts)");
}

}  // namespace bh::acceptance
