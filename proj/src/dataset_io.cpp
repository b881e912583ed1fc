#include "noisebench/dataset_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "noisebench/errors.hpp"

namespace noisebench {

namespace {

constexpr char kMagic[4] = {'N', 'B', 'T', 'S'};
constexpr std::uint16_t kVersion = 1;
constexpr std::size_t kHeaderSize = 32;

void put_u16(std::uint8_t* p, std::uint16_t v) {
  p[0] = std::uint8_t(v);
  p[1] = std::uint8_t(v >> 8);
}
void put_u32(std::uint8_t* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = std::uint8_t(v >> (8 * i));
}
void put_u64(std::uint8_t* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = std::uint8_t(v >> (8 * i));
}
std::uint16_t get_u16(const std::uint8_t* p) {
  return std::uint16_t(p[0]) | std::uint16_t(p[1]) << 8;
}
std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
  return v;
}
std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
  return v;
}

void put_f64_le(std::uint8_t* p, double v) { put_u64(p, std::bit_cast<std::uint64_t>(v)); }
void put_f32_le(std::uint8_t* p, float v) { put_u32(p, std::bit_cast<std::uint32_t>(v)); }
double get_f64_le(const std::uint8_t* p) { return std::bit_cast<double>(get_u64(p)); }
float get_f32_le(const std::uint8_t* p) { return std::bit_cast<float>(get_u32(p)); }

}  // namespace

void write_dataset(const TimeSeriesDataset& ds, const std::filesystem::path& path,
                   Dtype dtype) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCategory::Io, "cannot open for writing: " + path.string());

  std::uint8_t header[kHeaderSize] = {};
  std::memcpy(header, kMagic, 4);
  put_u16(header + 4, kVersion);
  header[6] = std::uint8_t(dtype);
  put_u32(header + 7, std::uint32_t(ds.channels));
  put_u64(header + 11, ds.n_series);
  put_u64(header + 19, ds.series_len);
  // bytes 27..31 reserved, zero
  out.write(reinterpret_cast<const char*>(header), kHeaderSize);

  const std::size_t count = ds.data.size();
  if (dtype == Dtype::Float64) {
    std::vector<std::uint8_t> buf(count * 8);
    for (std::size_t i = 0; i < count; ++i) put_f64_le(buf.data() + 8 * i, ds.data[i]);
    out.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
  } else {
    std::vector<std::uint8_t> buf(count * 4);
    for (std::size_t i = 0; i < count; ++i) put_f32_le(buf.data() + 4 * i, float(ds.data[i]));
    out.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
  }
  require(out.good(), ErrorCategory::Io, "write failed: " + path.string());
}

TimeSeriesDataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCategory::Io, "cannot open for reading: " + path.string());

  std::uint8_t header[kHeaderSize];
  in.read(reinterpret_cast<char*>(header), kHeaderSize);
  require(in.gcount() == kHeaderSize, ErrorCategory::CorruptFile, "file shorter than header");
  require(std::memcmp(header, kMagic, 4) == 0, ErrorCategory::Format,
          "bad magic (not an NBTS dataset)");
  require(get_u16(header + 4) == kVersion, ErrorCategory::Format,
          "unsupported dataset version");
  const std::uint8_t dtype = header[6];
  require(dtype <= 1, ErrorCategory::Format, "unknown dtype code");
  const std::size_t channels = get_u32(header + 7);
  const std::size_t n_series = get_u64(header + 11);
  const std::size_t series_len = get_u64(header + 19);
  require(channels >= 1, ErrorCategory::Format, "channel count must be >= 1");

  const std::size_t count = n_series * series_len * channels;
  const std::size_t elem = (dtype == 0) ? 4 : 8;

  in.seekg(0, std::ios::end);
  const std::uint64_t file_size = std::uint64_t(in.tellg());
  require(file_size == kHeaderSize + count * elem, ErrorCategory::CorruptFile,
          "payload length does not match header");
  in.seekg(kHeaderSize, std::ios::beg);

  TimeSeriesDataset ds;
  ds.n_series = n_series;
  ds.series_len = series_len;
  ds.channels = channels;
  ds.data.resize(count);
  std::vector<std::uint8_t> buf(count * elem);
  in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
  require(std::size_t(in.gcount()) == buf.size(), ErrorCategory::CorruptFile,
          "truncated payload");
  if (dtype == 0) {
    for (std::size_t i = 0; i < count; ++i) ds.data[i] = double(get_f32_le(buf.data() + 4 * i));
  } else {
    for (std::size_t i = 0; i < count; ++i) ds.data[i] = get_f64_le(buf.data() + 8 * i);
  }
  return ds;
}

TimeSeriesDataset read_csv_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCategory::Io, "cannot open for reading: " + path.string());

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<double> row;
    std::size_t col = 0;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      ++col;
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      require(end != cell.c_str() && *end == '\0', ErrorCategory::Parse,
              "non-numeric cell at row " + std::to_string(line_no) + ", column " +
                  std::to_string(col) + ": '" + cell + "'");
      row.push_back(v);
    }
    if (!rows.empty()) {
      require(row.size() == rows.front().size(), ErrorCategory::Parse,
              "ragged row " + std::to_string(line_no) + ": expected " +
                  std::to_string(rows.front().size()) + " columns, got " +
                  std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  require(!rows.empty() && !rows.front().empty(), ErrorCategory::InvalidInput,
          "empty CSV dataset");

  TimeSeriesDataset ds(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i].begin(), rows[i].end(), ds.series(i).begin());
  }
  return ds;
}

std::filesystem::path meta_path_for(const std::filesystem::path& dataset_path) {
  std::filesystem::path p = dataset_path;
  p.replace_extension(".meta.json");
  return p;
}

void write_meta(const std::filesystem::path& dataset_path, const DatasetMeta& meta) {
  nlohmann::ordered_json j;
  j["schema"] = "nbts-meta/1";
  if (meta.spec) {
    j["model"] = model_name(*meta.spec);
    nlohmann::ordered_json params;
    for (const auto& [k, v] : spec_params(*meta.spec)) {
      if (k == "pulse") {
        params[k] = pulse_name(std::get<Shot>(*meta.spec).pulse);
      } else {
        params[k] = v;
      }
    }
    j["params"] = params;
  }
  j["master_seed"] = meta.master_seed;
  j["provenance"] = meta.provenance;
  j["n_series"] = meta.n_series;
  j["series_len"] = meta.series_len;

  std::ofstream out(meta_path_for(dataset_path), std::ios::trunc);
  require(out.good(), ErrorCategory::Io, "cannot write metadata sidecar");
  out << j.dump(2) << "\n";
}

std::optional<DatasetMeta> read_meta(const std::filesystem::path& dataset_path) {
  const std::filesystem::path p = meta_path_for(dataset_path);
  std::ifstream in(p);
  if (!in.good()) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::Parse, "invalid metadata sidecar: " + std::string(e.what()));
  }
  DatasetMeta meta;
  try {
    if (j.contains("model")) {
      std::map<std::string, std::string> params;
      for (const auto& [k, v] : j.at("params").items()) {
        if (v.is_string()) {
          params[k] = v.get<std::string>();
        } else {
          std::ostringstream os;
          os.precision(17);
          os << v.get<double>();
          params[k] = os.str();
        }
      }
      meta.spec = make_spec(j.at("model").get<std::string>(), params);
    }
    meta.master_seed = j.value("master_seed", std::uint64_t(0));
    meta.provenance = j.value("provenance", std::string());
    meta.n_series = j.value("n_series", std::size_t(0));
    meta.series_len = j.value("series_len", std::size_t(0));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::Parse, "invalid metadata sidecar: " + std::string(e.what()));
  }
  return meta;
}

}  // namespace noisebench
