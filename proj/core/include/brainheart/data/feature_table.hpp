#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "brainheart/data/tensor.hpp"

namespace bh {

struct FeatureTable {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;
  std::vector<TrialMeta> labels;

  std::size_t size() const { return rows.size(); }
  std::size_t width() const { return feature_names.size(); }

  /// Index of a feature column; throws ValidationError if absent.
  std::size_t column(const std::string& name) const;

  /// Shape checks: one label per row, every row as wide as the header.
  void validate() const;

  void append(std::vector<double> row, TrialMeta label);
};

/// Removes rows holding NaN/inf and logs each dropped trial. Returns the count.
std::size_t drop_nonfinite_rows(FeatureTable& table);

/// Keeps the listed rows in the given order.
FeatureTable take_rows(const FeatureTable& table, const std::vector<std::size_t>& indices);

/// Keeps only the named columns, in the given order.
FeatureTable select_columns(const FeatureTable& table, const std::vector<std::string>& names);

/// CSV with header subject_id,condition,subcondition,trial_index,<features...>.
/// Values use the shortest representation that round-trips exactly.
void write_feature_csv(const FeatureTable& table, std::ostream& out);
void write_feature_csv(const FeatureTable& table, const std::filesystem::path& path);

/// Throws DataError naming the line for malformed input.
FeatureTable read_feature_csv(std::istream& in);
FeatureTable read_feature_csv(const std::filesystem::path& path);

}  // namespace bh
