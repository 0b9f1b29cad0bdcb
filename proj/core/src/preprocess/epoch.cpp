#include "brainheart/preprocess/epoch.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"
#include "brainheart/util/log.hpp"
#include "brainheart/util/stats.hpp"

namespace bh {

namespace {

std::ptrdiff_t to_samples(double seconds, double rate) {
  return static_cast<std::ptrdiff_t>(std::llround(seconds * rate));
}

// Rebuilds a tensor of the same shape from per-(trial, channel) rows.
SignalTensor with_rows(const SignalTensor& like, const std::vector<std::vector<double>>& rows) {
  std::vector<float> samples(like.samples().size(), kPadValue);
  const std::size_t extent = like.time_extent();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::transform(rows[r].begin(), rows[r].end(), samples.begin() + static_cast<std::ptrdiff_t>(r * extent),
                   [](double v) { return static_cast<float>(v); });
  }
  return SignalTensor(like.dims(), like.sampling_rate(), like.unit(), std::move(samples), like.valid_length());
}

}  // namespace

void validate_epoch_spec(const EpochSpec& spec) {
  if (!(spec.t_min < 0.0)) throw ValidationError("epoch t_min must be < 0");
  if (!(spec.t_max > 0.0)) throw ValidationError("epoch t_max must be > 0");
  if (!(spec.baseline_start < spec.baseline_end)) throw ValidationError("baseline window must have start < end");
  if (spec.baseline_end > 0.0) throw ValidationError("baseline window must end at or before the event");
}

EpochResult epoch_signal(const std::vector<std::vector<double>>& recording, std::span<const double> onsets,
                         const EpochSpec& spec, double rate, Unit unit, std::span<const double> t_max_per_event) {
  validate_epoch_spec(spec);
  if (!(rate > 0.0)) throw ValidationError("sampling rate must be > 0");
  if (recording.empty()) throw ValidationError("recording has no channels");
  const std::size_t length = recording.front().size();
  for (const auto& ch : recording) {
    if (ch.size() != length) throw ValidationError("recording channels differ in length");
  }
  for (std::size_t i = 1; i < onsets.size(); ++i) {
    if (!(onsets[i] > onsets[i - 1])) throw ValidationError("event_onsets not increasing");
  }
  if (!t_max_per_event.empty() && t_max_per_event.size() != onsets.size()) {
    throw ValidationError("t_max_per_event must match the number of onsets");
  }

  const std::ptrdiff_t pre = to_samples(-spec.t_min, rate);
  EpochResult result;
  std::vector<std::vector<std::vector<double>>> trials;
  for (std::size_t e = 0; e < onsets.size(); ++e) {
    const double t_max = t_max_per_event.empty() ? spec.t_max : t_max_per_event[e];
    if (!(t_max > 0.0)) throw ValidationError(fmt::format("t_max for event {} must be > 0", e));
    const std::ptrdiff_t onset = to_samples(onsets[e], rate);
    const std::ptrdiff_t start = onset - pre;
    const std::ptrdiff_t stop = onset + to_samples(t_max, rate);
    if (start < 0 || stop > static_cast<std::ptrdiff_t>(length)) {
      logger().info("dropping event {} at {} s: epoch [{}, {}] s leaves the recording", e, onsets[e],
                    onsets[e] + spec.t_min, onsets[e] + t_max);
      result.dropped.push_back(e);
      continue;
    }
    std::vector<std::vector<double>> epoch;
    for (const auto& ch : recording) epoch.emplace_back(ch.begin() + start, ch.begin() + stop);
    trials.push_back(std::move(epoch));
    result.kept.push_back(e);
  }
  if (trials.empty()) {
    const std::size_t extent = static_cast<std::size_t>(pre + to_samples(spec.t_max, rate));
    result.epochs = SignalTensor({{Axis::trial, 0}, {Axis::channel, recording.size()}, {Axis::time, extent}}, rate,
                                 unit, {}, {});
  } else {
    result.epochs = SignalTensor::from_trials(trials, rate, unit, true);
  }
  return result;
}

SignalTensor baseline_correct(const SignalTensor& epochs, const EpochSpec& spec) {
  const double rate = epochs.sampling_rate();
  if (spec.baseline_start < spec.t_min - 0.5 / rate || !(spec.baseline_start < spec.baseline_end)) {
    throw ValidationError(fmt::format("baseline window ({}, {}) outside epoch starting at {}", spec.baseline_start,
                                      spec.baseline_end, spec.t_min));
  }
  const auto lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, to_samples(spec.baseline_start - spec.t_min, rate)));
  const auto hi = static_cast<std::size_t>(to_samples(spec.baseline_end - spec.t_min, rate));
  if (hi <= lo) throw ValidationError("baseline window covers no samples");

  std::vector<std::vector<double>> rows;
  for (std::size_t t = 0; t < epochs.trial_count(); ++t) {
    if (hi > epochs.valid_length()[t]) {
      throw ValidationError(fmt::format("baseline window outside epoch {} ({} valid samples)", t,
                                        epochs.valid_length()[t]));
    }
    for (std::size_t c = 0; c < epochs.channel_count(); ++c) {
      auto x = epochs.series(t, c);
      const double m = stats::mean(std::span<const double>(x.data() + lo, hi - lo));
      for (double& v : x) v -= m;
      rows.push_back(std::move(x));
    }
  }
  return with_rows(epochs, rows);
}

ArtifactResult reject_artifacts(const SignalTensor& epochs, double limit) {
  if (!(limit > 0.0)) throw ValidationError("limit > 0 required for artifact rejection");
  ArtifactResult result;
  for (std::size_t t = 0; t < epochs.trial_count(); ++t) {
    bool clean = true;
    for (std::size_t c = 0; c < epochs.channel_count() && clean; ++c) {
      const auto x = epochs.series(t, c);
      if (x.empty()) continue;
      const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
      clean = (*mx - *mn) <= limit;
    }
    (clean ? result.kept_indices : result.rejected).push_back(t);
  }
  for (const std::size_t t : result.rejected) logger().info("rejecting epoch {}: peak-to-peak above {}", t, limit);
  result.kept = subset_trials(epochs, result.kept_indices);
  return result;
}

std::vector<double> zscore_normalize(std::span<const double> samples) {
  if (samples.size() < 2) throw ValidationError("zscore needs at least 2 samples");
  const double s = stats::sd(samples);
  if (!(s > 0.0)) throw DataError("zero variance epoch cannot be normalized");
  return stats::zscore(samples);
}

SignalTensor zscore_epochs(const SignalTensor& epochs) {
  std::vector<std::vector<double>> rows;
  for (std::size_t t = 0; t < epochs.trial_count(); ++t) {
    for (std::size_t c = 0; c < epochs.channel_count(); ++c) rows.push_back(zscore_normalize(epochs.series(t, c)));
  }
  return with_rows(epochs, rows);
}

std::vector<std::vector<double>> average_reference(const std::vector<std::vector<double>>& channels) {
  if (channels.empty()) return {};
  const std::size_t n = channels.front().size();
  for (const auto& ch : channels) {
    if (ch.size() != n) throw ValidationError("channels differ in length");
  }
  std::vector<std::vector<double>> out = channels;
  const auto k = static_cast<double>(channels.size());
  for (std::size_t i = 0; i < n; ++i) {
    double m = 0.0;
    for (const auto& ch : channels) m += ch[i];
    m /= k;
    for (auto& ch : out) ch[i] -= m;
  }
  return out;
}

}  // namespace bh
