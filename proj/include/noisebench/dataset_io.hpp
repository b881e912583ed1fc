#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "noisebench/dataset.hpp"
#include "noisebench/noise_spec.hpp"

namespace noisebench {

/// On-disk sample type of the .nbts payload.  float32 files are accepted on
/// read and up-cast to double.
enum class Dtype : std::uint8_t { Float32 = 0, Float64 = 1 };

/// Writes the 32-byte header ("NBTS", version 1) followed by the
/// little-endian row-major payload ([series][channel][time]).
void write_dataset(const TimeSeriesDataset& ds, const std::filesystem::path& path,
                   Dtype dtype = Dtype::Float64);

TimeSeriesDataset read_dataset(const std::filesystem::path& path);

/// One series per row, comma separated; ragged or non-numeric input is a
/// parse error naming the offending cell.
TimeSeriesDataset read_csv_dataset(const std::filesystem::path& path);

/// Sidecar metadata stored as JSON next to the payload (same basename,
/// .meta.json extension).
struct DatasetMeta {
  std::optional<NoiseSpec> spec;
  std::uint64_t master_seed = 0;
  std::string provenance;  // free-form generator description
  std::size_t n_series = 0;
  std::size_t series_len = 0;
};

std::filesystem::path meta_path_for(const std::filesystem::path& dataset_path);
void write_meta(const std::filesystem::path& dataset_path, const DatasetMeta& meta);
std::optional<DatasetMeta> read_meta(const std::filesystem::path& dataset_path);

}  // namespace noisebench
