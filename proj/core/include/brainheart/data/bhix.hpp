#pragma once

#include <filesystem>
#include <span>

#include "brainheart/data/tensor.hpp"

namespace bh {

inline constexpr int kBhixFormatVersion = 1;
inline constexpr char kBhixMagic[9] = "BHIX0001";

/// Writes `path`/manifest.json and `path`/data.bhix, creating the directory.
/// Throws ValidationError when meta does not cover every trial cell
/// ("meta incomplete") and DataError when the directory is unwritable or
/// locked by another writer.
void write_tensor(const SignalTensor& tensor, std::span<const TrialMeta> meta,
                  const std::filesystem::path& path);

/// Throws DataError on bad magic, version mismatch, truncated blob or
/// manifest/blob dim disagreement.
TrialSet read_tensor(const std::filesystem::path& path);

}  // namespace bh
