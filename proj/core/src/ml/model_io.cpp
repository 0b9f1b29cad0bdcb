#include "brainheart/ml/model_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "brainheart/util/error.hpp"

namespace bh::ml {

namespace {

using json = nlohmann::ordered_json;

json tree_json(const Tree& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes) {
    if (n.is_leaf()) {
      const auto first = t.values.begin() + n.value;
      nodes.push_back({{"leaf", std::vector<double>(first, first + t.n_outputs)}});
    } else {
      nodes.push_back({{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left}, {"right", n.right}, {"gain", n.gain}});
    }
  }
  return {{"n_outputs", t.n_outputs}, {"nodes", std::move(nodes)}};
}

Tree tree_from(const json& j) {
  Tree t;
  t.n_outputs = j.at("n_outputs").get<int>();
  const auto& nodes = j.at("nodes");
  for (const auto& nj : nodes) {
    TreeNode n;
    if (nj.contains("leaf")) {
      const auto v = nj.at("leaf").get<std::vector<double>>();
      if (v.size() != static_cast<std::size_t>(t.n_outputs)) throw DataError("leaf width does not match n_outputs");
      n.value = static_cast<std::uint32_t>(t.values.size());
      t.values.insert(t.values.end(), v.begin(), v.end());
    } else {
      n.feature = nj.at("feature").get<int>();
      n.threshold = nj.at("threshold").get<double>();
      n.left = nj.at("left").get<int>();
      n.right = nj.at("right").get<int>();
      n.gain = nj.at("gain").get<double>();
      const auto size = static_cast<int>(nodes.size());
      if (n.feature < 0 || n.left <= 0 || n.right <= 0 || n.left >= size || n.right >= size) {
        throw DataError("tree node has out-of-range children or feature");
      }
    }
    t.nodes.push_back(n);
  }
  if (t.nodes.empty()) throw DataError("tree without nodes");
  return t;
}

json trees_json(const std::vector<Tree>& trees) {
  json a = json::array();
  for (const auto& t : trees) a.push_back(tree_json(t));
  return a;
}

std::vector<Tree> trees_from(const json& j) {
  std::vector<Tree> out;
  for (const auto& t : j) out.push_back(tree_from(t));
  return out;
}

json header(const char* kind) { return {{"format_version", kModelFormatVersion}, {"kind", kind}}; }

json parse(const std::string& text, const char* kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(fmt::format("model JSON: {}", e.what()));
  }
  if (!j.is_object() || !j.contains("format_version")) throw DataError("model JSON: missing format_version");
  if (j["format_version"] != kModelFormatVersion) {
    throw DataError(fmt::format("model JSON: unsupported format_version {}", j["format_version"].dump()));
  }
  if (kind && j.value("kind", "") != kind) {
    throw DataError(fmt::format("model JSON: expected kind '{}', got '{}'", kind, j.value("kind", "")));
  }
  return j;
}

json forest_json(const ForestModel& m) {
  json j = header("forest");
  j["n_classes"] = m.n_classes;
  j["n_features"] = m.n_features;
  j["class_names"] = m.class_names;
  j["feature_names"] = m.feature_names;
  j["trees"] = trees_json(m.trees);
  return j;
}

json gbt_json(const GbtModel& m) {
  json j = header("gbt");
  j["objective"] = std::string(to_string(m.objective));
  j["n_classes"] = m.n_classes;
  j["n_features"] = m.n_features;
  j["trees_per_round"] = m.trees_per_round;
  j["base_score"] = m.base_score;
  j["class_names"] = m.class_names;
  j["feature_names"] = m.feature_names;
  j["trees"] = trees_json(m.trees);
  return j;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw DataError(fmt::format("model JSON: {}", e.what()));
  }
}

ForestModel forest_from(const json& j) {
  return guarded([&] {
    ForestModel m;
    m.n_classes = j.at("n_classes").get<int>();
    m.n_features = j.at("n_features").get<std::size_t>();
    m.class_names = j.at("class_names").get<std::vector<std::string>>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.trees = trees_from(j.at("trees"));
    return m;
  });
}

GbtModel gbt_from(const json& j) {
  return guarded([&] {
    GbtModel m;
    m.objective = parse_objective(j.at("objective").get<std::string>());
    m.n_classes = j.at("n_classes").get<int>();
    m.n_features = j.at("n_features").get<std::size_t>();
    m.trees_per_round = j.at("trees_per_round").get<int>();
    if (m.trees_per_round < 1) throw DataError("model JSON: trees_per_round must be positive");
    m.base_score = j.at("base_score").get<double>();
    m.class_names = j.at("class_names").get<std::vector<std::string>>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.trees = trees_from(j.at("trees"));
    return m;
  });
}

}  // namespace

std::string to_json(const ForestModel& model) { return forest_json(model).dump() + "\n"; }
std::string to_json(const GbtModel& model) { return gbt_json(model).dump() + "\n"; }

std::string to_json(const MultiGbtModel& model) {
  json j = header("multi_gbt");
  j["input_names"] = model.input_names;
  j["output_names"] = model.output_names;
  json outs = json::array();
  for (const auto& m : model.outputs) outs.push_back(gbt_json(m));
  j["outputs"] = std::move(outs);
  return j.dump() + "\n";
}

std::string to_json(const Classifier& model) {
  if (const auto* f = model.forest()) return to_json(*f);
  return to_json(*model.gbt());
}

ForestModel forest_from_json(const std::string& text) { return forest_from(parse(text, "forest")); }
GbtModel gbt_from_json(const std::string& text) { return gbt_from(parse(text, "gbt")); }

MultiGbtModel multi_gbt_from_json(const std::string& text) {
  const auto j = parse(text, "multi_gbt");
  return guarded([&] {
    MultiGbtModel m;
    m.input_names = j.at("input_names").get<std::vector<std::string>>();
    m.output_names = j.at("output_names").get<std::vector<std::string>>();
    for (const auto& o : j.at("outputs")) m.outputs.push_back(gbt_from(o));
    return m;
  });
}

Classifier classifier_from_json(const std::string& text) {
  const auto j = parse(text, nullptr);
  const auto kind = j.value("kind", "");
  if (kind == "forest") return Classifier(forest_from(j));
  if (kind == "gbt") return Classifier(gbt_from(j));
  throw DataError(fmt::format("model JSON: '{}' is not a classifier", kind));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError(fmt::format("cannot write {}", path.string()));
  f << text;
  if (!f) throw DataError(fmt::format("write failed: {}", path.string()));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError(fmt::format("cannot read {}", path.string()));
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace bh::ml
