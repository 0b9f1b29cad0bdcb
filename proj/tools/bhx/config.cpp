#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "brainheart/util/error.hpp"

namespace bhx {

namespace fs = std::filesystem;
namespace cm = bh::crossmodal;
using bh::ValidationError;

std::string_view to_string(PreprocessMode mode) {
  switch (mode) {
    case PreprocessMode::eeg: return "eeg";
    case PreprocessMode::ecg: return "ecg";
    case PreprocessMode::rr: return "rr";
  }
  return "?";
}

PreprocessMode parse_preprocess_mode(std::string_view text) {
  if (text == "eeg") return PreprocessMode::eeg;
  if (text == "ecg") return PreprocessMode::ecg;
  if (text == "rr") return PreprocessMode::rr;
  throw ValidationError(fmt::format("unknown preprocess mode '{}' (eeg, ecg, rr)", text));
}

namespace {

std::string_view filter_name(bh::FilterKind kind) {
  switch (kind) {
    case bh::FilterKind::bandpass: return "bandpass";
    case bh::FilterKind::highpass: return "highpass";
    case bh::FilterKind::lowpass: return "lowpass";
  }
  return "?";
}

bh::FilterKind parse_filter_kind(std::string_view text) {
  if (text == "bandpass") return bh::FilterKind::bandpass;
  if (text == "highpass") return bh::FilterKind::highpass;
  if (text == "lowpass") return bh::FilterKind::lowpass;
  throw ValidationError(fmt::format("unknown filter '{}' (bandpass, highpass, lowpass)", text));
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string> split_list(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = unquote(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& s) {
  T v{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ValidationError(fmt::format("'{}' is not a number", s));
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw ValidationError(fmt::format("'{}' is not a boolean", s));
}

struct Field {
  std::function<void(PipelineConfig&, const std::string&, const fs::path&)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

using Registry = std::map<std::string, Field>;

// Field builders over an accessor returning a reference into the config.
template <typename Access>
Field int_field(Access access, int min_value) {
  return {[=](PipelineConfig& c, const std::string& v, const fs::path&) {
            const int n = parse_number<int>(v);
            if (n < min_value) throw ValidationError(fmt::format("must be >= {}", min_value));
            access(c) = n;
          },
          [=](const PipelineConfig& c) { return fmt::format("{}", access(c)); }};
}

template <typename Access>
Field size_field(Access access, std::size_t min_value) {
  return {[=](PipelineConfig& c, const std::string& v, const fs::path&) {
            const auto n = parse_number<std::size_t>(v);
            if (n < min_value) throw ValidationError(fmt::format("must be >= {}", min_value));
            access(c) = n;
          },
          [=](const PipelineConfig& c) { return fmt::format("{}", access(c)); }};
}

template <typename Access>
Field double_field(Access access) {
  return {[=](PipelineConfig& c, const std::string& v, const fs::path&) {
            const double x = parse_number<double>(v);
            if (!std::isfinite(x)) throw ValidationError("must be finite");
            access(c) = x;
          },
          [=](const PipelineConfig& c) { return fmt::format("{}", access(c)); }};
}

template <typename Access>
Field bool_field(Access access) {
  return {[=](PipelineConfig& c, const std::string& v, const fs::path&) { access(c) = parse_bool(v); },
          [=](const PipelineConfig& c) { return access(c) ? "true" : "false"; }};
}

template <typename Access>
Field path_field(Access access) {
  return {[=](PipelineConfig& c, const std::string& v, const fs::path& base) {
            fs::path p(v);
            access(c) = (p.is_relative() && !base.empty()) ? (base / p).lexically_normal() : p;
          },
          [=](const PipelineConfig& c) { return access(c).generic_string(); }};
}

template <typename Access, typename Parse, typename Show>
Field enum_field(Access access, Parse parse, Show show) {
  return {[=](PipelineConfig& c, const std::string& v, const fs::path&) { access(c) = parse(v); },
          [=](const PipelineConfig& c) { return std::string(show(access(c))); }};
}

template <typename Access, typename Parse, typename Show>
Field list_field(Access access, Parse parse, Show show) {
  return {[=](PipelineConfig& c, const std::string& v, const fs::path&) {
            auto& out = access(c);
            out.clear();
            for (const auto& item : split_list(v)) {
              auto value = parse(item);
              if (std::find(out.begin(), out.end(), value) != out.end()) {
                throw ValidationError(fmt::format("'{}' listed twice", item));
              }
              out.push_back(value);
            }
            if (out.empty()) throw ValidationError("list is empty");
          },
          [=](const PipelineConfig& c) {
            std::vector<std::string> names;
            for (const auto& v : access(c)) names.emplace_back(show(v));
            return fmt::format("{}", fmt::join(names, ","));
          }};
}

#define BHX_AT(expr) [](auto& c) -> auto& { return c.expr; }

const Registry& registry() {
  static const Registry r = [] {
    Registry m;
    const auto task_parse = [](const std::string& s) { return cm::parse_task(s); };
    const auto task_show = [](cm::Task t) { return cm::to_string(t); };
    const auto clf_parse = [](const std::string& s) { return bh::ml::parse_classifier(s); };
    const auto clf_show = [](bh::ml::ClassifierKind k) { return bh::ml::to_string(k); };
    const auto set_parse = [](const std::string& s) { return cm::parse_feature_set(s); };
    const auto set_show = [](cm::FeatureSet f) { return cm::slug(f); };

    m["run.seed"] = {[](PipelineConfig& c, const std::string& v, const fs::path&) {
                       c.seed = parse_number<std::uint64_t>(v);
                     },
                     [](const PipelineConfig& c) { return fmt::format("{}", c.seed); }};
    m["run.jobs"] = int_field(BHX_AT(jobs), 1);
    m["run.log_level"] = {[](PipelineConfig& c, const std::string& v, const fs::path&) {
                            static const std::vector<std::string> levels{"trace", "debug", "info", "warn",
                                                                         "error", "off"};
                            if (std::find(levels.begin(), levels.end(), v) == levels.end()) {
                              throw ValidationError(fmt::format("unknown level '{}'", v));
                            }
                            c.log_level = v;
                          },
                          [](const PipelineConfig& c) { return c.log_level; }};
    m["run.task"] = enum_field(BHX_AT(task), task_parse, task_show);
    m["run.classifier"] = enum_field(BHX_AT(classifier), clf_parse, clf_show);

    m["preprocess.in"] = path_field(BHX_AT(preprocess.in));
    m["preprocess.out"] = path_field(BHX_AT(preprocess.out));
    m["preprocess.mode"] = enum_field(
        BHX_AT(preprocess.mode), [](const std::string& s) { return parse_preprocess_mode(s); },
        [](PreprocessMode x) { return to_string(x); });
    m["preprocess.filter"] = enum_field(
        BHX_AT(preprocess.filter.kind), [](const std::string& s) { return parse_filter_kind(s); }, filter_name);
    m["preprocess.filter_enabled"] = bool_field(BHX_AT(preprocess.filter_enabled));
    m["preprocess.low_hz"] = double_field(BHX_AT(preprocess.filter.low_hz));
    m["preprocess.high_hz"] = double_field(BHX_AT(preprocess.filter.high_hz));
    m["preprocess.order"] = int_field(BHX_AT(preprocess.filter.order), 1);
    m["preprocess.zero_phase"] = bool_field(BHX_AT(preprocess.filter.zero_phase));
    m["preprocess.t_min"] = double_field(BHX_AT(preprocess.epoch.t_min));
    m["preprocess.t_max"] = double_field(BHX_AT(preprocess.epoch.t_max));
    m["preprocess.baseline"] = bool_field(BHX_AT(preprocess.baseline));
    m["preprocess.baseline_start"] = double_field(BHX_AT(preprocess.epoch.baseline_start));
    m["preprocess.baseline_end"] = double_field(BHX_AT(preprocess.epoch.baseline_end));
    m["preprocess.reject_artifacts"] = bool_field(BHX_AT(preprocess.reject_artifacts));
    m["preprocess.artifact_limit"] = double_field(BHX_AT(preprocess.artifact_limit));
    m["preprocess.zscore"] = bool_field(BHX_AT(preprocess.zscore));
    m["preprocess.average_reference"] = bool_field(BHX_AT(preprocess.average_reference));

    m["extract.in"] = path_field(BHX_AT(extract.in));
    m["extract.out"] = path_field(BHX_AT(extract.out));
    m["extract.mode"] = enum_field(
        BHX_AT(extract.mode), [](const std::string& s) { return bh::parse_feature_mode(s); },
        [](bh::FeatureMode x) { return bh::to_string(x); });

    m["synth.spec"] = path_field(BHX_AT(synth.spec));
    m["synth.in"] = path_field(BHX_AT(synth.in));
    m["synth.out"] = path_field(BHX_AT(synth.out));
    m["synth.spec_out"] = path_field(BHX_AT(synth.spec_out));
    m["synth.noise_sd"] = double_field(BHX_AT(synth.noise_sd));
    m["synth.window_beats"] = size_field(BHX_AT(synth.window_beats), 3);
    m["synth.max_evaluations"] = int_field(BHX_AT(synth.calibration.max_evaluations), 1);
    m["synth.tolerance"] = double_field(BHX_AT(synth.calibration.tolerance));
    m["synth.acceptance"] = double_field(BHX_AT(synth.calibration.acceptance));
    m["synth.max_modulation_fraction"] = double_field(BHX_AT(synth.calibration.max_modulation_fraction));
    m["synth.dt"] = double_field(BHX_AT(synth.calibration.dt));

    m["forest.n_trees"] = int_field(BHX_AT(forest.n_trees), 1);
    m["forest.max_depth"] = int_field(BHX_AT(forest.max_depth), 1);
    m["forest.max_features"] = int_field(BHX_AT(forest.max_features), 0);
    m["forest.min_samples_leaf"] = int_field(BHX_AT(forest.min_samples_leaf), 1);
    m["forest.min_samples_split"] = int_field(BHX_AT(forest.min_samples_split), 2);
    m["forest.bootstrap"] = bool_field(BHX_AT(forest.bootstrap));
    m["forest.balanced"] = bool_field(BHX_AT(forest.balanced));

    m["gbt.n_trees"] = int_field(BHX_AT(gbt.n_trees), 1);
    m["gbt.max_depth"] = int_field(BHX_AT(gbt.max_depth), 1);
    m["gbt.learning_rate"] = double_field(BHX_AT(gbt.learning_rate));
    m["gbt.lambda"] = double_field(BHX_AT(gbt.lambda));
    m["gbt.min_child_weight"] = double_field(BHX_AT(gbt.min_child_weight));

    m["cv.folds"] = int_field(BHX_AT(cv.folds), 2);
    m["cv.group_by_subject"] = bool_field(BHX_AT(cv.group_by_subject));
    m["cv.smote"] = bool_field(BHX_AT(cv.smote.enabled));
    m["cv.smote_k"] = int_field(BHX_AT(cv.smote.k), 1);

    m["train.in"] = path_field(BHX_AT(train.in));
    m["train.out"] = path_field(BHX_AT(train.out));

    m["crossmodal.hrv"] = path_field(BHX_AT(crossmodal.hrv));
    m["crossmodal.eeg"] = path_field(BHX_AT(crossmodal.eeg));
    m["crossmodal.out"] = path_field(BHX_AT(crossmodal.out));
    m["crossmodal.channel_average"] = bool_field(BHX_AT(crossmodal.channel_average));
    m["crossmodal.folds"] = int_field(BHX_AT(crossmodal.folds), 2);
    m["crossmodal.regressor_trees"] = int_field(BHX_AT(crossmodal.regressor_trees), 1);
    m["crossmodal.regressor_depth"] = int_field(BHX_AT(crossmodal.regressor_depth), 1);
    m["crossmodal.regressor_learning_rate"] = double_field(BHX_AT(crossmodal.regressor_learning_rate));

    m["grid.hrv"] = path_field(BHX_AT(grid.paths.hrv));
    m["grid.catch22_ecg"] = path_field(BHX_AT(grid.paths.catch22_ecg));
    m["grid.synthetic_hrv"] = path_field(BHX_AT(grid.paths.synthetic_hrv));
    m["grid.eeg"] = path_field(BHX_AT(grid.paths.eeg));
    m["grid.out"] = path_field(BHX_AT(grid.out));
    m["grid.feature_sets"] = list_field(BHX_AT(grid.feature_sets), set_parse, set_show);
    m["grid.tasks"] = list_field(BHX_AT(grid.tasks), task_parse, task_show);
    m["grid.classifiers"] = list_field(BHX_AT(grid.classifiers), clf_parse, clf_show);
    m["grid.permute_labels"] = bool_field(BHX_AT(grid.permute_labels));

    m["report.in"] = path_field(BHX_AT(report.in));
    m["report.out"] = path_field(BHX_AT(report.out));
    m["report.rr"] = path_field(BHX_AT(report.rr));
    return m;
  }();
  return r;
}

#undef BHX_AT

// Cross-field checks; messages name the field.
void check(const PipelineConfig& c) {
  const auto fail = [](std::string_view field, std::string_view what) {
    throw ValidationError(fmt::format("config field '{}': {}", field, what));
  };
  if (c.preprocess.artifact_limit <= 0) fail("preprocess.artifact_limit", "must be > 0");
  if (c.preprocess.filter.low_hz <= 0) fail("preprocess.low_hz", "must be > 0");
  if (c.preprocess.filter.high_hz <= 0) fail("preprocess.high_hz", "must be > 0");
  if (c.preprocess.filter.kind == bh::FilterKind::bandpass && c.preprocess.filter.low_hz >= c.preprocess.filter.high_hz) {
    fail("preprocess.low_hz", "must be below preprocess.high_hz");
  }
  if (c.preprocess.filter.order > 8) fail("preprocess.order", "must be <= 8");
  try {
    bh::validate_epoch_spec(c.preprocess.epoch);
  } catch (const ValidationError& e) {
    fail("preprocess.t_min", e.what());
  }
  if (c.synth.noise_sd < 0) fail("synth.noise_sd", "must be >= 0");
  if (c.synth.calibration.tolerance <= 0) fail("synth.tolerance", "must be > 0");
  if (c.synth.calibration.acceptance <= 0) fail("synth.acceptance", "must be > 0");
  if (c.synth.calibration.max_modulation_fraction <= 0 || c.synth.calibration.max_modulation_fraction >= 1) {
    fail("synth.max_modulation_fraction", "must be in (0, 1)");
  }
  if (c.synth.calibration.dt <= 0) fail("synth.dt", "must be > 0");
  if (c.gbt.learning_rate <= 0 || c.gbt.learning_rate > 1) fail("gbt.learning_rate", "must be in (0, 1]");
  if (c.gbt.lambda < 0) fail("gbt.lambda", "must be >= 0");
  if (c.gbt.min_child_weight < 0) fail("gbt.min_child_weight", "must be >= 0");
  if (c.crossmodal.regressor_learning_rate <= 0 || c.crossmodal.regressor_learning_rate > 1) {
    fail("crossmodal.regressor_learning_rate", "must be in (0, 1]");
  }
  if (c.forest.min_samples_split < c.forest.min_samples_leaf) {
    fail("forest.min_samples_split", "must be >= forest.min_samples_leaf");
  }
}

}  // namespace

PipelineConfig parse_config(const std::string& text, const fs::path& base_dir) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(fmt::format("config line {}: {}", e.line(), e.message()));
  }

  PipelineConfig cfg;
  const auto& fields = registry();
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ValidationError(fmt::format("config field '{}': keys must sit inside a [section]", section));
    }
    for (const auto& [key, node] : body) {
      const std::string name = section + "." + key;
      const auto it = fields.find(name);
      if (it == fields.end()) throw ValidationError(fmt::format("config field '{}': unknown key", name));
      try {
        it->second.set(cfg, unquote(node.data()), base_dir);
      } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("config field '{}': {}", name, e.what()));
      }
    }
  }
  check(cfg);
  return cfg;
}

PipelineConfig load_config(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw ValidationError(fmt::format("config file not found: {}", path.string()));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(fmt::format("cannot read config file: {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  auto cfg = parse_config(buf.str(), path.parent_path());
  cfg.source = path;
  return cfg;
}

std::string canonical_text(const PipelineConfig& cfg) {
  std::string out;
  for (const auto& [name, field] : registry()) out += fmt::format("{} = {}\n", name, field.get(cfg));
  return out;
}

}  // namespace bhx
