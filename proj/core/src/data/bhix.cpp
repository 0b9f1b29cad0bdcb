#include "brainheart/data/bhix.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "brainheart/util/error.hpp"

namespace bh {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::size_t kMagicSize = 8;

// Held for the duration of a write; creation fails if another writer owns it.
class DirectoryLock {
 public:
  explicit DirectoryLock(fs::path path) : path_(std::move(path)) {
    std::FILE* f = std::fopen(path_.c_str(), "wx");
    if (f == nullptr) {
      throw DataError(fmt::format("cannot lock {} (concurrent writer or unwritable path)",
                                  path_.parent_path().string()));
    }
    std::fclose(f);
  }
  ~DirectoryLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  fs::path path_;
};

std::uint32_t to_little_endian(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    return ((v & 0xFFu) << 24) | ((v & 0xFF00u) << 8) | ((v >> 8) & 0xFF00u) | (v >> 24);
  }
  return v;
}

json meta_to_json(const TrialMeta& m) {
  return {{"subject_id", m.subject_id},
          {"condition", to_string(m.condition)},
          {"subcondition", to_string(m.subcondition)},
          {"trial_index", m.trial_index},
          {"event_onsets", m.event_onsets}};
}

TrialMeta meta_from_json(const json& j) {
  TrialMeta m;
  m.subject_id = j.at("subject_id").get<std::string>();
  m.condition = parse_condition(j.at("condition").get<std::string>());
  m.subcondition = parse_subcondition(j.at("subcondition").get<std::string>());
  m.trial_index = j.at("trial_index").get<int>();
  m.event_onsets = j.at("event_onsets").get<std::vector<double>>();
  return m;
}

}  // namespace

void write_tensor(const SignalTensor& tensor, std::span<const TrialMeta> meta, const fs::path& path) {
  validate_trial_set(tensor, meta);

  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec) throw DataError(fmt::format("cannot create {}: {}", path.string(), ec.message()));
  DirectoryLock lock(path / ".lock");

  json manifest;
  manifest["format_version"] = kBhixFormatVersion;
  json axes = json::array();
  for (const auto& d : tensor.dims()) axes.push_back({{"name", to_string(d.axis)}, {"extent", d.extent}});
  manifest["axes"] = std::move(axes);
  manifest["sampling_rate"] = tensor.sampling_rate();
  manifest["unit"] = to_string(tensor.unit());
  manifest["valid_length"] = tensor.valid_length();
  json trials = json::array();
  for (const auto& m : meta) trials.push_back(meta_to_json(m));
  manifest["trials"] = std::move(trials);

  {
    std::ofstream out(path / "manifest.json", std::ios::binary | std::ios::trunc);
    out << manifest.dump(2) << '\n';
    if (!out) throw DataError(fmt::format("cannot write {}", (path / "manifest.json").string()));
  }

  std::ofstream blob(path / "data.bhix", std::ios::binary | std::ios::trunc);
  blob.write(kBhixMagic, kMagicSize);
  std::vector<std::uint32_t> words(tensor.samples().size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    words[i] = to_little_endian(std::bit_cast<std::uint32_t>(tensor.samples()[i]));
  }
  blob.write(reinterpret_cast<const char*>(words.data()),
             static_cast<std::streamsize>(words.size() * sizeof(std::uint32_t)));
  if (!blob) throw DataError(fmt::format("cannot write {}", (path / "data.bhix").string()));
}

TrialSet read_tensor(const fs::path& path) {
  const fs::path manifest_path = path / "manifest.json";
  const fs::path blob_path = path / "data.bhix";
  std::ifstream manifest_in(manifest_path, std::ios::binary);
  if (!manifest_in) throw DataError(fmt::format("cannot open {}", manifest_path.string()));

  json manifest;
  try {
    manifest = json::parse(manifest_in);
  } catch (const json::exception& e) {
    throw DataError(fmt::format("malformed manifest {}: {}", manifest_path.string(), e.what()));
  }

  std::vector<SignalTensor::Dim> dims;
  std::vector<std::size_t> valid;
  std::vector<TrialMeta> meta;
  double rate = 0.0;
  Unit unit = Unit::dimensionless;
  try {
    const int version = manifest.at("format_version").get<int>();
    if (version != kBhixFormatVersion) {
      throw DataError(fmt::format("version mismatch: manifest has {}, reader supports {}", version,
                                  kBhixFormatVersion));
    }
    for (const auto& a : manifest.at("axes")) {
      dims.push_back({parse_axis(a.at("name").get<std::string>()), a.at("extent").get<std::size_t>()});
    }
    rate = manifest.at("sampling_rate").get<double>();
    unit = parse_unit(manifest.at("unit").get<std::string>());
    valid = manifest.at("valid_length").get<std::vector<std::size_t>>();
    for (const auto& t : manifest.at("trials")) meta.push_back(meta_from_json(t));
  } catch (const json::exception& e) {
    throw DataError(fmt::format("malformed manifest {}: {}", manifest_path.string(), e.what()));
  } catch (const ValidationError& e) {
    throw DataError(fmt::format("malformed manifest {}: {}", manifest_path.string(), e.what()));
  }

  std::size_t expected = 1;
  for (const auto& d : dims) expected *= d.extent;

  std::ifstream blob_in(blob_path, std::ios::binary);
  if (!blob_in) throw DataError(fmt::format("cannot open {}", blob_path.string()));
  std::vector<char> bytes{std::istreambuf_iterator<char>(blob_in), std::istreambuf_iterator<char>()};
  if (bytes.size() < kMagicSize || std::memcmp(bytes.data(), kBhixMagic, kMagicSize) != 0) {
    throw DataError(fmt::format("bad magic in {}", blob_path.string()));
  }
  const std::size_t payload = bytes.size() - kMagicSize;
  if (payload < expected * sizeof(float)) {
    throw DataError(fmt::format("truncated blob: {} bytes for {} samples", payload, expected));
  }
  if (payload != expected * sizeof(float)) {
    throw DataError(fmt::format("dim disagreement: blob holds {} bytes, manifest dims need {}",
                                payload, expected * sizeof(float)));
  }

  std::vector<float> samples(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    std::uint32_t w;
    std::memcpy(&w, bytes.data() + kMagicSize + i * sizeof(w), sizeof(w));
    samples[i] = std::bit_cast<float>(to_little_endian(w));
  }

  try {
    TrialSet out{SignalTensor(std::move(dims), rate, unit, std::move(samples), std::move(valid)),
                 std::move(meta)};
    validate_trial_set(out.tensor, out.meta);
    return out;
  } catch (const ValidationError& e) {
    throw DataError(fmt::format("inconsistent store {}: {}", path.string(), e.what()));
  }
}

}  // namespace bh
