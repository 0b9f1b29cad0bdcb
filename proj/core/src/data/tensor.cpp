#include "brainheart/data/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <set>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"

namespace bh {

namespace {

constexpr std::array kAxisNames{"subject", "condition", "subcondition", "trial", "channel", "time"};
constexpr std::array kConditionNames{"JustListen", "Memorize"};
constexpr std::array kSubconditionNames{"Five", "Nine", "Thirteen"};
constexpr std::array kUnitNames{"microvolt", "millivolt", "millisecond", "dimensionless"};

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<const char*, N>& names, std::string_view what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (text == names[i]) return static_cast<Enum>(i);
  }
  throw ValidationError(fmt::format("unknown {} '{}'", what, text));
}

}  // namespace

std::string_view to_string(Axis axis) { return kAxisNames[static_cast<std::size_t>(axis)]; }
std::string_view to_string(Condition c) { return kConditionNames[static_cast<std::size_t>(c)]; }
std::string_view to_string(Subcondition s) { return kSubconditionNames[static_cast<std::size_t>(s)]; }
std::string_view to_string(Unit unit) { return kUnitNames[static_cast<std::size_t>(unit)]; }

Axis parse_axis(std::string_view text) { return parse_enum<Axis>(text, kAxisNames, "axis"); }
Condition parse_condition(std::string_view text) {
  return parse_enum<Condition>(text, kConditionNames, "condition");
}
Subcondition parse_subcondition(std::string_view text) {
  return parse_enum<Subcondition>(text, kSubconditionNames, "subcondition");
}
Unit parse_unit(std::string_view text) { return parse_enum<Unit>(text, kUnitNames, "unit"); }

std::string to_string(const TrialKey& key) {
  return fmt::format("({}, {}, {}, {})", key.subject_id, to_string(key.condition),
                     to_string(key.subcondition), key.trial_index);
}

void validate_meta(std::span<const TrialMeta> meta) {
  std::set<TrialKey> seen;
  for (const auto& m : meta) {
    for (std::size_t i = 1; i < m.event_onsets.size(); ++i) {
      if (!(m.event_onsets[i] > m.event_onsets[i - 1])) {
        throw ValidationError(
            fmt::format("event_onsets not increasing for trial {}", to_string(TrialKey(m))));
      }
    }
    if (!seen.insert(TrialKey(m)).second) {
      throw ValidationError(fmt::format("duplicate trial key {}", to_string(TrialKey(m))));
    }
  }
}

SignalTensor::SignalTensor(std::vector<Dim> dims, double sampling_rate, Unit unit,
                           std::vector<float> samples, std::vector<std::size_t> valid_length)
    : dims_(std::move(dims)),
      sampling_rate_(sampling_rate),
      unit_(unit),
      samples_(std::move(samples)),
      valid_length_(std::move(valid_length)) {
  if (!(sampling_rate_ > 0.0) || !std::isfinite(sampling_rate_)) {
    throw ValidationError("sampling_rate must be > 0");
  }
  if (dims_.empty() || dims_.back().axis != Axis::time) {
    throw ValidationError("time must be the last axis");
  }
  for (std::size_t i = 1; i < dims_.size(); ++i) {
    if (static_cast<int>(dims_[i].axis) <= static_cast<int>(dims_[i - 1].axis)) {
      throw ValidationError("axes must be unique and in canonical order");
    }
  }
  // A zero-extent leading axis is how an empty selection is represented.
  for (const auto& d : dims_) {
    if (d.extent == 0 && (d.axis == Axis::time || d.axis == Axis::channel)) {
      throw ValidationError(fmt::format("axis '{}' extent must be >= 1", to_string(d.axis)));
    }
  }
  trial_count_ = 1;
  channel_count_ = 1;
  for (const auto& d : dims_) {
    if (d.axis == Axis::time) {
      time_extent_ = d.extent;
    } else if (d.axis == Axis::channel) {
      channel_count_ = d.extent;
    } else {
      trial_count_ *= d.extent;
    }
  }
  const std::size_t expected = trial_count_ * channel_count_ * time_extent_;
  if (samples_.size() != expected) {
    throw ValidationError(
        fmt::format("sample count {} does not match dims ({})", samples_.size(), expected));
  }
  if (valid_length_.size() != trial_count_) {
    throw ValidationError(fmt::format("valid_length has {} entries for {} trials",
                                      valid_length_.size(), trial_count_));
  }
  for (std::size_t t = 0; t < trial_count_; ++t) {
    if (valid_length_[t] > time_extent_) {
      throw ValidationError(fmt::format("valid_length[{}] = {} exceeds time extent {}", t,
                                        valid_length_[t], time_extent_));
    }
    for (std::size_t c = 0; c < channel_count_; ++c) {
      float* row = samples_.data() + (t * channel_count_ + c) * time_extent_;
      std::fill(row + valid_length_[t], row + time_extent_, kPadValue);
    }
  }
}

SignalTensor SignalTensor::from_trials(const std::vector<std::vector<std::vector<double>>>& trials,
                                       double sampling_rate, Unit unit, bool channel_axis) {
  const std::size_t n_channels = trials.empty() ? 1 : trials.front().size();
  if (!channel_axis && n_channels != 1) {
    throw ValidationError("multi-channel trials need a channel axis");
  }
  if (n_channels == 0) throw ValidationError("trial without channels");
  std::size_t extent = 1;
  std::vector<std::size_t> valid(trials.size());
  for (std::size_t t = 0; t < trials.size(); ++t) {
    if (trials[t].size() != n_channels) throw ValidationError("ragged channel count");
    valid[t] = trials[t].front().size();
    for (const auto& ch : trials[t]) {
      if (ch.size() != valid[t]) throw ValidationError("channels of one trial differ in length");
    }
    extent = std::max(extent, valid[t]);
  }
  std::vector<float> samples(trials.size() * n_channels * extent, kPadValue);
  for (std::size_t t = 0; t < trials.size(); ++t) {
    for (std::size_t c = 0; c < n_channels; ++c) {
      float* row = samples.data() + (t * n_channels + c) * extent;
      std::transform(trials[t][c].begin(), trials[t][c].end(), row,
                     [](double v) { return static_cast<float>(v); });
    }
  }
  std::vector<Dim> dims{{Axis::trial, trials.size()}};
  if (channel_axis) dims.push_back({Axis::channel, n_channels});
  dims.push_back({Axis::time, extent});
  return SignalTensor(std::move(dims), sampling_rate, unit, std::move(samples), std::move(valid));
}

bool SignalTensor::has_axis(Axis axis) const {
  return std::any_of(dims_.begin(), dims_.end(), [axis](const Dim& d) { return d.axis == axis; });
}

std::span<const float> SignalTensor::row(std::size_t trial, std::size_t channel) const {
  if (trial >= trial_count_ || channel >= channel_count_) {
    throw ValidationError(fmt::format("row ({}, {}) out of range", trial, channel));
  }
  return {samples_.data() + (trial * channel_count_ + channel) * time_extent_, time_extent_};
}

std::vector<double> SignalTensor::series(std::size_t trial, std::size_t channel) const {
  const auto r = row(trial, channel);
  return {r.begin(), r.begin() + static_cast<std::ptrdiff_t>(valid_length_[trial])};
}

std::vector<std::vector<double>> SignalTensor::trial(std::size_t trial) const {
  std::vector<std::vector<double>> out;
  out.reserve(channel_count_);
  for (std::size_t c = 0; c < channel_count_; ++c) out.push_back(series(trial, c));
  return out;
}

bool SignalTensor::operator==(const SignalTensor& other) const {
  // Bitwise comparison so that NaN padding compares equal.
  return dims_ == other.dims_ && sampling_rate_ == other.sampling_rate_ && unit_ == other.unit_ &&
         valid_length_ == other.valid_length_ && samples_.size() == other.samples_.size() &&
         (samples_.empty() ||
          std::memcmp(samples_.data(), other.samples_.data(), samples_.size() * sizeof(float)) == 0);
}

void validate_trial_set(const SignalTensor& tensor, std::span<const TrialMeta> meta) {
  if (meta.size() != tensor.trial_count()) {
    throw ValidationError(fmt::format("meta incomplete: {} entries for {} trial cells", meta.size(),
                                      tensor.trial_count()));
  }
  validate_meta(meta);
}

SignalTensor subset_trials(const SignalTensor& tensor, std::span<const std::size_t> indices) {
  const std::size_t width = tensor.channel_count() * tensor.time_extent();
  std::vector<float> samples;
  samples.reserve(indices.size() * width);
  std::vector<std::size_t> valid;
  valid.reserve(indices.size());
  for (const std::size_t t : indices) {
    if (t >= tensor.trial_count()) throw ValidationError(fmt::format("trial index {} out of range", t));
    const auto first = tensor.samples().begin() + static_cast<std::ptrdiff_t>(t * width);
    samples.insert(samples.end(), first, first + static_cast<std::ptrdiff_t>(width));
    valid.push_back(tensor.valid_length()[t]);
  }
  std::vector<SignalTensor::Dim> dims{{Axis::trial, indices.size()}};
  if (tensor.has_axis(Axis::channel)) dims.push_back({Axis::channel, tensor.channel_count()});
  dims.push_back({Axis::time, std::max<std::size_t>(tensor.time_extent(), 1)});
  if (tensor.time_extent() == 0) samples.assign(indices.size() * tensor.channel_count(), kPadValue);
  return SignalTensor(std::move(dims), tensor.sampling_rate(), tensor.unit(), std::move(samples),
                      std::move(valid));
}

TrialSet take_trials(const SignalTensor& tensor, std::span<const TrialMeta> meta,
                     std::span<const std::size_t> indices) {
  validate_trial_set(tensor, meta);
  TrialSet out;
  out.tensor = subset_trials(tensor, indices);
  for (const std::size_t t : indices) out.meta.push_back(meta[t]);
  return out;
}

TrialSet select_trials(const SignalTensor& tensor, std::span<const TrialMeta> meta,
                       const std::function<bool(const TrialMeta&)>& predicate) {
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < meta.size(); ++t) {
    if (predicate(meta[t])) keep.push_back(t);
  }
  return take_trials(tensor, meta, keep);
}

}  // namespace bh
