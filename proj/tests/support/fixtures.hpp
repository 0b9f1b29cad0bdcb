#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bh::test {

inline std::string fixture_path(const std::string& name) { return std::string(BH_FIXTURE_DIR) + "/" + name; }

inline std::vector<std::string> split_csv(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

/// Rows of `id,v0,v1,...`.
inline std::vector<std::pair<std::string, std::vector<double>>> read_series(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv(line);
    std::vector<double> v;
    for (std::size_t i = 1; i < cells.size(); ++i) v.push_back(std::stod(cells[i]));
    rows.emplace_back(cells[0], std::move(v));
  }
  return rows;
}

/// series_id -> feature_name -> value, from a long-format reference file.
inline std::map<std::string, std::map<std::string, double>> read_reference(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::map<std::string, std::map<std::string, double>> out;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv(line);
    const std::string& v = cells.at(2);
    out[cells[0]][cells[1]] = (v == "nan" || v == "NaN") ? std::stod("nan") : std::stod(v);
  }
  return out;
}

/// Single-row CSV with a header.
inline std::map<std::string, double> read_record(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::string header, values;
  std::getline(in, header);
  std::getline(in, values);
  const auto keys = split_csv(header);
  const auto vals = split_csv(values);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < keys.size(); ++i) out[keys[i]] = std::stod(vals.at(i));
  return out;
}

inline bool close_to(double got, double want, double rel = 1e-6, double abs = 1e-8) {
  if (std::isnan(want)) return std::isnan(got);
  return std::abs(got - want) <= abs + rel * std::abs(want);
}

}  // namespace bh::test
