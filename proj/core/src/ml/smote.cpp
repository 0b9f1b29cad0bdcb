#include "brainheart/ml/smote.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"
#include "brainheart/util/random.hpp"

namespace bh::ml {

namespace {

struct Synthetic {
  std::size_t base;
  std::vector<double> row;
};

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

std::vector<Synthetic> synthesize(const Dataset& data, int k, std::uint64_t seed) {
  if (k < 1) throw ValidationError(fmt::format("SMOTE k must be positive, got {}", k));
  check_training_data(data.x, data.y, data.n_classes);
  const auto counts = data.class_counts();
  const std::size_t majority = *std::max_element(counts.begin(), counts.end());
  auto name = [&](std::size_t c) { return c < data.class_names.size() ? data.class_names[c] : std::to_string(c); };

  Rng rng(seed);
  std::vector<Synthetic> out;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0 || counts[c] == majority) continue;
    if (counts[c] < 2) throw ValidationError(fmt::format("SMOTE: class '{}' has 1 sample; at least 2 required", name(c)));
    if (static_cast<std::size_t>(k) > counts[c] - 1) {
      throw ValidationError(fmt::format("SMOTE: k = {} too large for class '{}' with {} samples", k, name(c), counts[c]));
    }
    std::vector<std::size_t> members;
    for (std::size_t r = 0; r < data.size(); ++r) {
      if (static_cast<std::size_t>(data.y[r]) == c) members.push_back(r);
    }
    // k nearest same-class neighbours of every member.
    std::vector<std::vector<std::size_t>> nn(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      std::vector<std::pair<double, std::size_t>> d;
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (j != i) d.emplace_back(squared_distance(data.x.row(members[i]), data.x.row(members[j])), members[j]);
      }
      std::partial_sort(d.begin(), d.begin() + k, d.end());
      for (int q = 0; q < k; ++q) nn[i].push_back(d[static_cast<std::size_t>(q)].second);
    }
    for (std::size_t s = counts[c]; s < majority; ++s) {
      const auto i = static_cast<std::size_t>(rng.below(members.size()));
      const auto nb = nn[i][static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(k)))];
      const double u = rng.uniform_open();
      const auto x = data.x.row(members[i]);
      const auto y = data.x.row(nb);
      Synthetic syn{members[i], std::vector<double>(x.size())};
      for (std::size_t f = 0; f < x.size(); ++f) syn.row[f] = x[f] + u * (y[f] - x[f]);
      out.push_back(std::move(syn));
    }
  }
  return out;
}

}  // namespace

Dataset smote(const Dataset& data, int k, std::uint64_t seed) {
  const auto synthetic = synthesize(data, k, seed);
  Dataset out = data;
  out.x.data.reserve(out.x.data.size() + synthetic.size() * out.x.cols);
  for (const auto& s : synthetic) {
    out.x.data.insert(out.x.data.end(), s.row.begin(), s.row.end());
    ++out.x.rows;
    out.y.push_back(data.y[s.base]);
  }
  return out;
}

FeatureTable smote_oversample(const FeatureTable& table, Target target, int k, std::uint64_t seed) {
  const auto data = make_dataset(table, target);
  const auto synthetic = synthesize(data, k, seed);
  FeatureTable out = table;
  int tag = 0;
  for (const auto& s : synthetic) {
    TrialMeta meta = table.labels[s.base];
    meta.trial_index = --tag;
    meta.event_onsets.clear();
    out.append(s.row, std::move(meta));
  }
  return out;
}

}  // namespace bh::ml
