#include "brainheart/data/feature_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"
#include "brainheart/util/log.hpp"

namespace bh {

namespace {

constexpr std::size_t kLabelColumns = 4;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (const char ch : line) {
    if (ch == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (ch != '\r') {
      current.push_back(ch);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

double parse_double(const std::string& text, std::size_t line_no) {
  if (text == "nan" || text == "NaN") return std::nan("");
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError(fmt::format("line {}: '{}' is not a number", line_no, text));
  }
  return value;
}

}  // namespace

std::size_t FeatureTable::column(const std::string& name) const {
  const auto it = std::find(feature_names.begin(), feature_names.end(), name);
  if (it == feature_names.end()) throw ValidationError(fmt::format("unknown feature column '{}'", name));
  return static_cast<std::size_t>(it - feature_names.begin());
}

void FeatureTable::validate() const {
  if (rows.size() != labels.size()) {
    throw ValidationError(
        fmt::format("feature table has {} rows but {} labels", rows.size(), labels.size()));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != feature_names.size()) {
      throw ValidationError(fmt::format("row {} has {} values for {} columns", i, rows[i].size(),
                                        feature_names.size()));
    }
  }
}

void FeatureTable::append(std::vector<double> row, TrialMeta label) {
  if (row.size() != feature_names.size()) {
    throw ValidationError(
        fmt::format("row has {} values for {} columns", row.size(), feature_names.size()));
  }
  rows.push_back(std::move(row));
  labels.push_back(std::move(label));
}

std::size_t drop_nonfinite_rows(FeatureTable& table) {
  table.validate();
  std::size_t kept = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (std::all_of(row.begin(), row.end(), [](double v) { return std::isfinite(v); })) {
      if (kept != i) {
        table.rows[kept] = std::move(table.rows[i]);
        table.labels[kept] = std::move(table.labels[i]);
      }
      ++kept;
    } else {
      logger().warn("dropping trial {}: non-finite feature value", to_string(TrialKey(table.labels[i])));
    }
  }
  const std::size_t dropped = table.rows.size() - kept;
  table.rows.resize(kept);
  table.labels.resize(kept);
  return dropped;
}

FeatureTable take_rows(const FeatureTable& table, const std::vector<std::size_t>& indices) {
  FeatureTable out;
  out.feature_names = table.feature_names;
  out.rows.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (const std::size_t i : indices) {
    if (i >= table.size()) throw ValidationError(fmt::format("row index {} out of range", i));
    out.rows.push_back(table.rows[i]);
    out.labels.push_back(table.labels[i]);
  }
  return out;
}

FeatureTable select_columns(const FeatureTable& table, const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const auto& n : names) idx.push_back(table.column(n));
  FeatureTable out;
  out.feature_names = names;
  out.labels = table.labels;
  out.rows.reserve(table.size());
  for (const auto& row : table.rows) {
    std::vector<double> r;
    r.reserve(idx.size());
    for (const std::size_t j : idx) r.push_back(row[j]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

void write_feature_csv(const FeatureTable& table, std::ostream& out) {
  table.validate();
  out << "subject_id,condition,subcondition,trial_index";
  for (const auto& name : table.feature_names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& m = table.labels[i];
    out << fmt::format("{},{},{},{}", m.subject_id, to_string(m.condition), to_string(m.subcondition),
                       m.trial_index);
    for (const double v : table.rows[i]) out << ',' << fmt::format("{}", v);
    out << '\n';
  }
}

void write_feature_csv(const FeatureTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  write_feature_csv(table, out);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
}

FeatureTable read_feature_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("feature table is empty (no header)");
  const auto header = split_csv_line(line);
  if (header.size() < kLabelColumns || header[0] != "subject_id" || header[1] != "condition" ||
      header[2] != "subcondition" || header[3] != "trial_index") {
    throw DataError("feature table header must start with subject_id,condition,subcondition,trial_index");
  }
  FeatureTable table;
  table.feature_names.assign(header.begin() + kLabelColumns, header.end());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw DataError(fmt::format("line {}: {} fields, header has {}", line_no, fields.size(), header.size()));
    }
    TrialMeta m;
    try {
      m.subject_id = fields[0];
      m.condition = parse_condition(fields[1]);
      m.subcondition = parse_subcondition(fields[2]);
      m.trial_index = static_cast<int>(parse_double(fields[3], line_no));
    } catch (const ValidationError& e) {
      throw DataError(fmt::format("line {}: {}", line_no, e.what()));
    }
    std::vector<double> row;
    row.reserve(table.width());
    for (std::size_t j = kLabelColumns; j < fields.size(); ++j) row.push_back(parse_double(fields[j], line_no));
    table.rows.push_back(std::move(row));
    table.labels.push_back(std::move(m));
  }
  return table;
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  return read_feature_csv(in);
}

}  // namespace bh
