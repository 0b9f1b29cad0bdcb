#include "brainheart/features/assemble.hpp"

#include <limits>

#include <fmt/format.h>

#include "brainheart/features/bandpower.hpp"
#include "brainheart/features/catch22.hpp"
#include "brainheart/features/hrv.hpp"
#include "brainheart/preprocess/rpeaks.hpp"
#include "brainheart/preprocess/rr.hpp"
#include "brainheart/util/error.hpp"
#include "brainheart/util/log.hpp"
#include "brainheart/util/parallel.hpp"

namespace bh {

namespace {

std::string channel_prefix(std::size_t channels, std::size_t c) {
  return channels == 1 ? std::string() : fmt::format("ch{}_", c);
}

std::vector<std::string> catch22_names(std::size_t channels) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < channels; ++c) {
    for (const auto n : kCatch22Names) names.push_back(channel_prefix(channels, c) + std::string(n));
  }
  return names;
}

std::vector<std::string> bandpower_names(std::size_t channels) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < channels; ++c) {
    for (const char* kind : {"abs", "rel"}) {
      for (const auto& band : kEegBands) names.push_back(fmt::format("ch{}_{}_{}", c, band.name, kind));
    }
  }
  return names;
}

std::vector<double> hrv_row(const SignalTensor& t, std::size_t trial) {
  RrSeries rr;
  if (t.unit() == Unit::millisecond) {
    rr = rr_from_intervals(t.series(trial, 0));
  } else {
    const auto ecg = t.series(trial, 0);
    rr = extract_rr(detect_r_peaks(ecg, t.sampling_rate()), t.sampling_rate());
  }
  const auto v = compute_hrv(rr).values();
  return {v.begin(), v.end()};
}

void append_catch22(const SignalTensor& t, std::size_t trial, std::vector<double>& row) {
  for (std::size_t c = 0; c < t.channel_count(); ++c) {
    const auto v = compute_catch22(t.series(trial, c));
    row.insert(row.end(), v.begin(), v.end());
  }
}

void append_bandpower(const SignalTensor& t, std::size_t trial, std::vector<double>& row) {
  const auto bp = compute_band_power(t.trial(trial), t.sampling_rate());
  for (std::size_t c = 0; c < bp.absolute.size(); ++c) {
    row.insert(row.end(), bp.absolute[c].begin(), bp.absolute[c].end());
    row.insert(row.end(), bp.relative[c].begin(), bp.relative[c].end());
  }
}

}  // namespace

std::string_view to_string(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::hrv: return "hrv";
    case FeatureMode::catch22: return "catch22";
    case FeatureMode::bandpower: return "bandpower";
    case FeatureMode::eeg_combined: return "eeg_combined";
  }
  return "?";
}

FeatureMode parse_feature_mode(std::string_view text) {
  for (const auto m : {FeatureMode::hrv, FeatureMode::catch22, FeatureMode::bandpower, FeatureMode::eeg_combined}) {
    if (to_string(m) == text) return m;
  }
  throw ValidationError(fmt::format("unknown feature mode '{}'", text));
}

std::vector<std::string> feature_names(FeatureMode mode, std::size_t channels) {
  switch (mode) {
    case FeatureMode::hrv: return {kHrvFeatureNames.begin(), kHrvFeatureNames.end()};
    case FeatureMode::catch22: return catch22_names(channels);
    case FeatureMode::bandpower: return bandpower_names(channels);
    case FeatureMode::eeg_combined: {
      auto names = bandpower_names(channels);
      auto c22 = catch22_names(channels);
      if (channels == 1) {
        for (auto& n : c22) n = "ch0_" + n;
      }
      names.insert(names.end(), c22.begin(), c22.end());
      return names;
    }
  }
  return {};
}

FeatureTable assemble_features(const TrialSet& trials, FeatureMode mode, int jobs) {
  const SignalTensor& t = trials.tensor;
  if (t.empty()) throw DataError("empty tensor: no trials to extract features from");
  validate_trial_set(t, trials.meta);
  if (mode == FeatureMode::hrv && t.channel_count() != 1) {
    throw ValidationError(fmt::format("hrv mode expects a single channel, got {}", t.channel_count()));
  }
  if ((mode == FeatureMode::bandpower || mode == FeatureMode::eeg_combined) &&
      !(t.sampling_rate() > 2.0 * kEegBands.back().high_hz)) {
    throw ValidationError(fmt::format("rate too low for requested bands: {} Hz", t.sampling_rate()));
  }

  FeatureTable table;
  table.feature_names = feature_names(mode, t.channel_count());
  const std::size_t width = table.feature_names.size();
  std::vector<std::vector<double>> rows(t.trial_count());
  parallel_for(t.trial_count(), jobs, [&](std::size_t i) {
    std::vector<double> row;
    row.reserve(width);
    try {
      switch (mode) {
        case FeatureMode::hrv: row = hrv_row(t, i); break;
        case FeatureMode::catch22: append_catch22(t, i, row); break;
        case FeatureMode::bandpower: append_bandpower(t, i, row); break;
        case FeatureMode::eeg_combined:
          append_bandpower(t, i, row);
          append_catch22(t, i, row);
          break;
      }
    } catch (const std::exception& e) {
      logger().warn("trial {}: feature extraction failed: {}", to_string(TrialKey(trials.meta[i])), e.what());
      row.assign(width, std::numeric_limits<double>::quiet_NaN());
    }
    rows[i] = std::move(row);
  });
  for (std::size_t i = 0; i < rows.size(); ++i) table.append(std::move(rows[i]), trials.meta[i]);
  drop_nonfinite_rows(table);
  return table;
}

}  // namespace bh
