#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "brainheart/crossmodal/crossmodal.hpp"
#include "brainheart/crossmodal/grid.hpp"
#include "brainheart/data/bhix.hpp"
#include "brainheart/data/feature_table.hpp"
#include "brainheart/features/assemble.hpp"
#include "brainheart/ml/model_io.hpp"
#include "brainheart/preprocess/rpeaks.hpp"
#include "brainheart/preprocess/rr.hpp"
#include "brainheart/psvsdg/batch.hpp"
#include "brainheart/util/error.hpp"
#include "brainheart/util/log.hpp"
#include "brainheart/util/random.hpp"
#include "config.hpp"
#include "manifest.hpp"
#include "report.hpp"

namespace bhx {

namespace fs = std::filesystem;
namespace cm = bh::crossmodal;
using bh::DataError;
using bh::ValidationError;

namespace {

struct Flags {
  std::string config;
  std::string in, out, mode, task, classifier, spec;
  std::string hrv, eeg, rr;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
};

fs::path pick(const std::string& flag, const fs::path& configured, std::string_view flag_name,
              std::string_view field) {
  if (!flag.empty()) return fs::path(flag);
  if (!configured.empty()) return configured;
  throw ValidationError(fmt::format("missing {} (or config field '{}')", flag_name, field));
}

void require_file(const fs::path& p, std::string_view what) {
  std::error_code ec;
  if (!fs::exists(p, ec)) throw ValidationError(fmt::format("{} not found: {}", what, p.string()));
}

void ensure_parent(const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
}

bh::ml::ClassifierConfig classifier_config(const PipelineConfig& cfg) {
  bh::ml::ClassifierConfig c;
  c.kind = cfg.classifier;
  c.forest = cfg.forest;
  c.forest.seed = cfg.seed;
  c.gbt = cfg.gbt;
  c.gbt.seed = cfg.seed;
  return c;
}

// ---------------------------------------------------------------- preprocess

int cmd_preprocess(const PipelineConfig& cfg, const Flags& flags, std::ostream& out) {
  const auto in = pick(flags.in, cfg.preprocess.in, "--in", "preprocess.in");
  const auto dst = pick(flags.out, cfg.preprocess.out, "--out", "preprocess.out");
  const auto mode = flags.mode.empty() ? cfg.preprocess.mode : parse_preprocess_mode(flags.mode);
  require_file(in, "input tensor");
  RunManifest manifest("preprocess", cfg);
  manifest.input(in);
  manifest.note("mode", std::string(to_string(mode)));

  const auto raw = manifest.timed("read", [&] { return bh::read_tensor(in); });
  const auto all = bh::select_trials(raw.tensor, raw.meta, [](const bh::TrialMeta&) { return true; });
  const double rate = all.tensor.sampling_rate();

  bh::TrialSet result;
  if (mode == PreprocessMode::rr) {
    manifest.timed("rr", [&] {
      std::vector<std::vector<std::vector<double>>> trials;
      std::vector<std::size_t> kept;
      for (std::size_t t = 0; t < all.tensor.trial_count(); ++t) {
        const auto ecg = all.tensor.series(t, 0);
        try {
          const auto peaks = bh::detect_r_peaks(ecg, rate);
          auto rr = bh::extract_rr(peaks, rate);
          trials.push_back({std::move(rr.intervals)});
          kept.push_back(t);
        } catch (const std::exception& e) {
          bh::logger().warn("trial {} dropped: {}", bh::to_string(bh::TrialKey(all.meta[t])), e.what());
        }
      }
      if (trials.empty()) throw DataError("no trial yielded an RR series");
      result.tensor = bh::SignalTensor::from_trials(trials, 1.0, bh::Unit::millisecond, false);
      for (const auto t : kept) result.meta.push_back(all.meta[t]);
    });
  } else {
    const auto& p = cfg.preprocess;
    if (p.filter_enabled) bh::validate_filter(p.filter, rate);
    manifest.timed("filter", [&] {
      std::vector<std::vector<std::vector<double>>> trials(all.tensor.trial_count());
      for (std::size_t t = 0; t < trials.size(); ++t) {
        auto channels = all.tensor.trial(t);
        if (p.filter_enabled) {
          for (auto& ch : channels) ch = bh::apply_filter(ch, rate, p.filter);
        }
        if (mode == PreprocessMode::eeg && p.average_reference && channels.size() > 1) {
          channels = bh::average_reference(channels);
        }
        trials[t] = std::move(channels);
      }
      result.tensor = bh::SignalTensor::from_trials(trials, rate, all.tensor.unit(), all.tensor.has_axis(bh::Axis::channel));
      result.meta = all.meta;
    });
    if (mode == PreprocessMode::eeg) {
      if (p.baseline) {
        manifest.timed("baseline", [&] { result.tensor = bh::baseline_correct(result.tensor, p.epoch); });
      }
      if (p.reject_artifacts) {
        manifest.timed("artifacts", [&] {
          auto r = bh::reject_artifacts(result.tensor, p.artifact_limit);
          std::vector<bh::TrialMeta> meta;
          for (const auto i : r.kept_indices) meta.push_back(result.meta[i]);
          manifest.note("rejected_trials", std::to_string(r.rejected.size()));
          if (r.kept.empty()) throw DataError("artifact rejection removed every trial");
          result.tensor = std::move(r.kept);
          result.meta = std::move(meta);
        });
      }
      if (p.zscore) {
        manifest.timed("zscore", [&] { result.tensor = bh::zscore_epochs(result.tensor); });
      }
    }
  }

  manifest.timed("write", [&] { bh::write_tensor(result.tensor, result.meta, dst); });
  manifest.output(dst);
  manifest.write(RunManifest::location_for(dst, true));
  out << fmt::format("preprocess ({}): {} of {} trials -> {}\n", to_string(mode), result.tensor.trial_count(),
                     all.tensor.trial_count(), dst.string());
  return kExitOk;
}

// ---------------------------------------------------------------- extract

int cmd_extract(const PipelineConfig& cfg, const Flags& flags, std::ostream& out) {
  const auto in = pick(flags.in, cfg.extract.in, "--in", "extract.in");
  const auto dst = pick(flags.out, cfg.extract.out, "--out", "extract.out");
  const auto mode = flags.mode.empty() ? cfg.extract.mode : bh::parse_feature_mode(flags.mode);
  require_file(in, "input tensor");
  RunManifest manifest("extract", cfg);
  manifest.input(in);
  manifest.note("mode", std::string(bh::to_string(mode)));

  const auto trials = manifest.timed("read", [&] { return bh::read_tensor(in); });
  const auto table = manifest.timed("features", [&] { return bh::assemble_features(trials, mode, cfg.jobs); });
  ensure_parent(dst);
  manifest.timed("write", [&] { bh::write_feature_csv(table, dst); });
  manifest.output(dst);
  manifest.note("rows", std::to_string(table.size()));
  manifest.write(RunManifest::location_for(dst, false));
  out << fmt::format("extract ({}): {} rows x {} features -> {}\n", bh::to_string(mode), table.size(), table.width(),
                     dst.string());
  return kExitOk;
}

// ---------------------------------------------------------------- synth

int cmd_synth(const PipelineConfig& cfg, const Flags& flags, std::ostream& out) {
  const auto dst = pick(flags.out, cfg.synth.out, "--out", "synth.out");
  const fs::path spec = !flags.spec.empty() ? fs::path(flags.spec) : cfg.synth.spec;
  const fs::path rr_in = !flags.in.empty() ? fs::path(flags.in) : cfg.synth.in;
  if (spec.empty() == rr_in.empty()) {
    throw ValidationError("synth needs exactly one of --spec (synth.spec) or --in (synth.in)");
  }
  RunManifest manifest("synth", cfg);

  std::vector<bh::SynthTrialSpec> specs;
  if (!spec.empty()) {
    require_file(spec, "spec file");
    manifest.input(spec);
    specs = manifest.timed("specs", [&] { return bh::read_synth_specs(spec); });
  } else {
    require_file(rr_in, "RR tensor");
    manifest.input(rr_in);
    specs = manifest.timed("specs", [&] {
      const auto rr = bh::read_tensor(rr_in);
      return bh::derive_synth_specs(rr, cfg.seed, cfg.synth.window_beats);
    });
    if (!cfg.synth.spec_out.empty()) {
      ensure_parent(cfg.synth.spec_out);
      bh::write_synth_specs(specs, cfg.synth.spec_out);
      manifest.output(cfg.synth.spec_out);
    }
  }
  if (specs.empty()) throw DataError("no synthesis specs");

  bh::BatchOptions options;
  options.jobs = cfg.jobs;
  options.noise_sd = cfg.synth.noise_sd;
  options.calibration = cfg.synth.calibration;
  const auto batch = manifest.timed("generate", [&] { return bh::generate_synthetic_batch(specs, options); });
  if (batch.trials.meta.empty()) throw DataError("calibration failed for every spec");
  manifest.timed("write", [&] { bh::write_tensor(batch.trials.tensor, batch.trials.meta, dst); });
  manifest.output(dst);
  manifest.note("skipped", std::to_string(batch.skipped.size()));
  manifest.write(RunManifest::location_for(dst, true));
  out << fmt::format("synth: {} series ({} skipped) -> {}\n", batch.trials.meta.size(), batch.skipped.size(),
                     dst.string());
  return kExitOk;
}

// ---------------------------------------------------------------- train

int cmd_train(const PipelineConfig& cfg, const Flags& flags, std::ostream& out) {
  const auto in = pick(flags.in, cfg.train.in, "--in", "train.in");
  const auto dst = pick(flags.out, cfg.train.out, "--out", "train.out");
  require_file(in, "feature table");
  RunManifest manifest("train", cfg);
  manifest.input(in);
  manifest.note("task", std::string(cm::to_string(cfg.task)));
  manifest.note("classifier", std::string(bh::ml::to_string(cfg.classifier)));

  const auto table = manifest.timed("read", [&] { return bh::read_feature_csv(in); });
  const auto data = cm::task_dataset(table, cfg.task);
  bh::ml::FoldAudit audit;
  const auto train = manifest.timed("smote", [&] {
    return bh::ml::oversample_training(data, cfg.cv.smote, bh::mix_seed(cfg.seed, 2), audit);
  });
  auto model = manifest.timed("fit", [&] { return bh::ml::train_classifier(train, classifier_config(cfg), cfg.jobs); });
  model.set_feature_names(table.feature_names);
  ensure_parent(dst);
  manifest.timed("write", [&] { bh::ml::write_text(dst, bh::ml::to_json(model)); });
  manifest.output(dst);
  manifest.note("rows", std::to_string(data.size()));
  manifest.note("synthetic_rows", std::to_string(audit.synthetic));
  manifest.write(RunManifest::location_for(dst, false));
  out << fmt::format("train ({}, {}): {} rows (+{} SMOTE) -> {}\n", bh::ml::to_string(cfg.classifier),
                     cm::to_string(cfg.task), data.size(), audit.synthetic, dst.string());
  return kExitOk;
}

// ---------------------------------------------------------------- crossmodal

int cmd_crossmodal(const PipelineConfig& cfg, const Flags& flags, std::ostream& out) {
  const auto hrv_path = pick(flags.hrv, cfg.crossmodal.hrv, "--hrv", "crossmodal.hrv");
  const auto eeg_path = pick(flags.eeg, cfg.crossmodal.eeg, "--eeg", "crossmodal.eeg");
  const auto dst = pick(flags.out, cfg.crossmodal.out, "--out", "crossmodal.out");
  require_file(hrv_path, "HRV table");
  require_file(eeg_path, "EEG table");
  RunManifest manifest("crossmodal", cfg);
  manifest.input(hrv_path);
  manifest.input(eeg_path);
  manifest.note("task", std::string(cm::to_string(cfg.task)));
  manifest.note("classifier", std::string(bh::ml::to_string(cfg.classifier)));

  auto hrv = cm::task_rows(bh::read_feature_csv(hrv_path), cfg.task);
  auto eeg = cm::task_rows(bh::read_feature_csv(eeg_path), cfg.task);
  if (cfg.crossmodal.channel_average) {
    try {
      eeg = cm::average_channels(eeg);
    } catch (const ValidationError&) {
      bh::logger().info("{}: no ch<N>_ columns, channel averaging skipped", eeg_path.string());
    }
  }

  cm::CrossModalOptions options;
  options.classifier = classifier_config(cfg);
  options.regressor.n_trees = cfg.crossmodal.regressor_trees;
  options.regressor.max_depth = cfg.crossmodal.regressor_depth;
  options.regressor.learning_rate = cfg.crossmodal.regressor_learning_rate;
  options.regressor.lambda = cfg.gbt.lambda;
  options.regressor.min_child_weight = cfg.gbt.min_child_weight;
  options.regressor.seed = cfg.seed;
  options.target = cm::task_target(cfg.task);
  options.smote = cfg.cv.smote;
  options.seed = cfg.seed;
  options.jobs = cfg.jobs;

  const auto cv = manifest.timed("cross_validate", [&] {
    return cm::cross_validate_crossmodal(hrv, eeg, options, cfg.crossmodal.folds);
  });
  const auto model = manifest.timed("fit", [&] { return cm::train_crossmodal(hrv, eeg, options); });

  fs::create_directories(dst);
  manifest.timed("write", [&] {
    bh::ml::write_text(dst / "metrics.json", bh::ml::metrics_to_json(cv.pooled));
    bh::ml::write_confusion_csv(cv.pooled, dst / "confusion.csv");
    nlohmann::ordered_json folds;
    folds["fold_accuracy"] = cv.fold_accuracy;
    folds["mean_accuracy"] = cv.mean_accuracy();
    folds["sd_accuracy"] = cv.sd_accuracy();
    bh::ml::write_text(dst / "folds.json", folds.dump(2) + "\n");
    bh::ml::write_text(dst / "model.json", cm::to_json(model));
  });
  for (const auto* name : {"metrics.json", "confusion.csv", "folds.json", "model.json"}) manifest.output(dst / name);
  manifest.write(RunManifest::location_for(dst, true));
  out << fmt::format("crossmodal ({}, {}): accuracy {:.3f} ± {:.3f} over {} folds -> {}\n",
                     bh::ml::to_string(cfg.classifier), cm::to_string(cfg.task), cv.mean_accuracy(),
                     cv.sd_accuracy(), cv.fold_accuracy.size(), dst.string());
  return kExitOk;
}

// ---------------------------------------------------------------- grid

int cmd_grid(const PipelineConfig& cfg, const Flags& flags, std::ostream& out) {
  const auto dst = pick(flags.out, cfg.grid.out, "--out", "grid.out");
  RunManifest manifest("grid", cfg);

  cm::ExperimentGrid grid;
  grid.feature_sets = cfg.grid.feature_sets;
  grid.tasks = cfg.grid.tasks;
  grid.classifiers = cfg.grid.classifiers;
  grid.classifier = classifier_config(cfg);
  grid.cv = cfg.cv;
  grid.cv.jobs = cfg.jobs;
  grid.permute_labels = cfg.grid.permute_labels;
  grid.seed = cfg.seed;

  const auto data = manifest.timed("read", [&] { return cm::load_grid_data(cfg.grid.paths, grid.feature_sets); });
  for (const auto* p : {&cfg.grid.paths.hrv, &cfg.grid.paths.catch22_ecg, &cfg.grid.paths.synthetic_hrv,
                        &cfg.grid.paths.eeg}) {
    if (!p->empty()) manifest.input(*p);
  }
  const auto report = manifest.timed("run", [&] { return cm::run_experiment_grid(grid, data); });
  manifest.timed("write", [&] { cm::write_report_bundle(report, grid, dst); });
  manifest.output(dst / "summary.json");
  manifest.output(dst / "anova.json");
  manifest.note("cells", std::to_string(report.cells.size()));
  manifest.write(RunManifest::location_for(dst, true));
  out << fmt::format("grid: {} cells -> {}\n", report.cells.size(), dst.string());
  for (const auto& c : report.cells) {
    out << fmt::format("  {:<16} {:<10} {:<6} {:.3f} ± {:.3f}\n", cm::to_string(c.feature_set), cm::to_string(c.task),
                       bh::ml::to_string(c.classifier), c.cv.mean_accuracy(), c.cv.sd_accuracy());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- report

int cmd_report(const PipelineConfig& cfg, const Flags& flags, std::ostream& out) {
  const auto in = pick(flags.in, cfg.report.in, "--in", "report.in");
  const fs::path dst = !flags.out.empty() ? fs::path(flags.out) : (!cfg.report.out.empty() ? cfg.report.out : in);
  const fs::path rr = !flags.rr.empty() ? fs::path(flags.rr) : cfg.report.rr;
  require_file(in / "summary.json", "report bundle summary");
  require_file(in / "anova.json", "report bundle ANOVA");
  if (!rr.empty()) require_file(rr, "RR tensor");
  RunManifest manifest("report", cfg);
  manifest.input(in);

  fs::create_directories(dst);
  std::size_t figures = 0;
  manifest.timed("table", [&] {
    bh::ml::write_text(dst / "table.md",
                       table_markdown(bh::ml::read_text(in / "summary.json"), bh::ml::read_text(in / "anova.json")));
  });
  manifest.output(dst / "table.md");
  manifest.timed("confusion", [&] {
    const auto cells = in / "cells";
    if (!fs::is_directory(cells)) return;
    std::vector<fs::path> dirs;
    for (const auto& e : fs::directory_iterator(cells)) {
      if (e.is_directory() && fs::exists(e.path() / "metrics.json")) dirs.push_back(e.path());
    }
    std::sort(dirs.begin(), dirs.end());
    fs::create_directories(dst / "confusion");
    for (const auto& d : dirs) {
      const auto name = d.filename().string();
      const auto metrics = bh::ml::metrics_from_json(bh::ml::read_text(d / "metrics.json"));
      bh::ml::write_text(dst / "confusion" / (name + ".svg"), confusion_svg(metrics, name));
      ++figures;
    }
  });
  if (!rr.empty()) {
    manifest.input(rr);
    manifest.timed("poincare", [&] {
      const auto trials = bh::read_tensor(rr);
      const auto flat = bh::select_trials(trials.tensor, trials.meta, [](const bh::TrialMeta&) { return true; });
      if (flat.tensor.unit() != bh::Unit::millisecond) throw DataError(fmt::format("{}: not an RR tensor (ms)", rr.string()));
      fs::create_directories(dst / "poincare");
      for (std::size_t t = 0; t < flat.tensor.trial_count(); ++t) {
        const auto& m = flat.meta[t];
        const auto name = fmt::format("{}_{}_{}_{}", m.subject_id, bh::to_string(m.condition),
                                      bh::to_string(m.subcondition), m.trial_index);
        const auto series = flat.tensor.series(t, 0);
        if (series.size() < 3) continue;
        bh::ml::write_text(dst / "poincare" / (name + ".svg"), poincare_svg(series, name));
        ++figures;
      }
    });
  }
  manifest.note("figures", std::to_string(figures));
  manifest.write(RunManifest::location_for(dst, true));
  out << fmt::format("report: table.md and {} figures -> {}\n", figures, dst.string());
  return kExitOk;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "Config file (sectioned key = value)");
  sub->add_option("--seed", f.seed, "Global seed");
  sub->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Brain-heart feature pipeline", "bhx"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BHX_VERSION);
  Flags f;

  const std::vector<std::string> tasks{"multiclass", "binary"};
  const std::vector<std::string> classifiers{"forest", "gbt"};

  auto* pre = app.add_subcommand("preprocess", "Filter, baseline, reject and normalise a BHIX tensor, or derive RR");
  add_common(pre, f);
  pre->add_option("--in", f.in, "Input BHIX directory");
  pre->add_option("--out", f.out, "Output BHIX directory");
  pre->add_option("--mode", f.mode, "eeg, ecg or rr")->check(CLI::IsMember({"eeg", "ecg", "rr"}));

  auto* ext = app.add_subcommand("extract", "Feature table from a BHIX tensor");
  add_common(ext, f);
  ext->add_option("--in", f.in, "Input BHIX directory");
  ext->add_option("--out", f.out, "Output CSV");
  ext->add_option("--mode", f.mode, "hrv, catch22, bandpower or eeg_combined")
      ->check(CLI::IsMember({"hrv", "catch22", "bandpower", "eeg_combined"}));

  auto* syn = app.add_subcommand("synth", "Synthetic RR series from specs or from a real RR tensor");
  add_common(syn, f);
  syn->add_option("--spec", f.spec, "Spec CSV");
  syn->add_option("--in", f.in, "RR tensor to derive specs from");
  syn->add_option("--out", f.out, "Output BHIX directory");

  auto* trn = app.add_subcommand("train", "Fit a classifier on a feature table");
  add_common(trn, f);
  trn->add_option("--in", f.in, "Feature CSV");
  trn->add_option("--out", f.out, "Model JSON");
  trn->add_option("--task", f.task, "multiclass or binary")->check(CLI::IsMember(tasks));
  trn->add_option("--classifier", f.classifier, "forest or gbt")->check(CLI::IsMember(classifiers));

  auto* xm = app.add_subcommand("crossmodal", "HRV-to-EEG feature mapping with cross-validated classification");
  add_common(xm, f);
  xm->add_option("--hrv", f.hrv, "HRV feature CSV");
  xm->add_option("--eeg", f.eeg, "EEG feature CSV");
  xm->add_option("--out", f.out, "Output directory");
  xm->add_option("--task", f.task, "multiclass or binary")->check(CLI::IsMember(tasks));
  xm->add_option("--classifier", f.classifier, "forest or gbt")->check(CLI::IsMember(classifiers));

  auto* grd = app.add_subcommand("grid", "Feature set x task x classifier experiment grid");
  add_common(grd, f);
  grd->add_option("--out", f.out, "Output directory");

  auto* rep = app.add_subcommand("report", "Markdown table and SVG figures from a grid bundle");
  add_common(rep, f);
  rep->add_option("--in", f.in, "Grid output directory");
  rep->add_option("--out", f.out, "Report directory (default: the input)");
  rep->add_option("--rr", f.rr, "RR tensor for Poincaré plots");

  std::vector<const char*> argv{"bhx"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    PipelineConfig cfg = f.config.empty() ? PipelineConfig{} : load_config(f.config);
    if (f.seed) cfg.seed = *f.seed;
    if (f.jobs) cfg.jobs = *f.jobs;
    if (!f.task.empty()) cfg.task = cm::parse_task(f.task);
    if (!f.classifier.empty()) cfg.classifier = bh::ml::parse_classifier(f.classifier);
    bh::set_log_level(spdlog::level::from_str(cfg.log_level));

    if (name == "preprocess") return cmd_preprocess(cfg, f, out);
    if (name == "extract") return cmd_extract(cfg, f, out);
    if (name == "synth") return cmd_synth(cfg, f, out);
    if (name == "train") return cmd_train(cfg, f, out);
    if (name == "crossmodal") return cmd_crossmodal(cfg, f, out);
    if (name == "grid") return cmd_grid(cfg, f, out);
    if (name == "report") return cmd_report(cfg, f, out);
    err << "error: unknown command " << name << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace bhx
