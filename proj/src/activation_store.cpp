#include "repgeom/activation_store.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "repgeom/error.hpp"
#include "repgeom/simd/kernels.hpp"

namespace repgeom {

namespace fs = std::filesystem;

static_assert(std::endian::native == std::endian::little,
              "activations.f32 is little-endian; big-endian hosts need byte swapping");
static_assert(sizeof(float) == 4);

namespace {

void check_finite(std::span<const float> data) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      throw ValidationError("non-finite activation value at element " + std::to_string(i));
    }
  }
}

}  // namespace

ActivationArchive::ActivationArchive(std::size_t num_samples, std::size_t num_layers,
                                     std::size_t hidden_dim, std::vector<float> data,
                                     CorpusManifest manifest)
    : num_samples_(num_samples),
      num_layers_(num_layers),
      hidden_dim_(hidden_dim),
      data_(std::move(data)),
      manifest_(std::move(manifest)) {
  if (num_samples_ == 0 || num_layers_ == 0 || hidden_dim_ == 0) {
    throw ValidationError("archive dimensions must all be >= 1");
  }
  if (data_.size() != num_samples_ * num_layers_ * hidden_dim_) {
    throw ValidationError("size mismatch: data has " + std::to_string(data_.size()) +
                          " elements, expected " +
                          std::to_string(num_samples_ * num_layers_ * hidden_dim_));
  }
  if (manifest_.samples.size() != num_samples_) {
    throw ValidationError("manifest has " + std::to_string(manifest_.samples.size()) +
                          " samples but archive has " + std::to_string(num_samples_));
  }
  for (std::size_t i = 0; i < manifest_.samples.size(); ++i) {
    if (manifest_.samples[i].sample_id != static_cast<int>(i)) {
      throw ValidationError("manifest samples are not in sample_id order");
    }
  }
  check_finite(data_);
}

void write_archive(const ActivationArchive& archive, const fs::path& dir) {
  check_finite(archive.data());

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  nlohmann::json header;
  header["format_version"] = ActivationArchive::kFormatVersion;
  header["num_samples"] = archive.num_samples();
  header["num_layers"] = archive.num_layers();
  header["hidden_dim"] = archive.hidden_dim();
  header["dtype"] = "float32";
  header["byte_order"] = "little";
  header["layout"] = "sample_layer_dim";
  header["manifest"] = manifest_to_json(archive.manifest());

  {
    std::ofstream out(dir / ActivationArchive::kHeaderFile, std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / ActivationArchive::kHeaderFile).string());
    out << header.dump(2) << '\n';
    if (!out) throw IoError("write failed: header.json");
  }
  {
    std::ofstream out(dir / ActivationArchive::kDataFile, std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / ActivationArchive::kDataFile).string());
    const auto bytes = std::as_bytes(archive.data());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: activations.f32");
  }
}

ActivationArchive read_archive(const fs::path& dir) {
  const fs::path header_path = dir / ActivationArchive::kHeaderFile;
  const fs::path data_path = dir / ActivationArchive::kDataFile;
  if (!fs::is_directory(dir)) throw IoError("archive directory not found: " + dir.string());
  if (!fs::exists(header_path)) throw IoError("missing " + header_path.string());
  if (!fs::exists(data_path)) throw IoError("missing " + data_path.string());

  nlohmann::json header;
  {
    std::ifstream in(header_path, std::ios::binary);
    if (!in) throw IoError("cannot open " + header_path.string());
    try {
      in >> header;
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("corrupt header.json: ") + e.what());
    }
  }

  std::size_t n = 0, l = 0, h = 0;
  CorpusManifest manifest;
  try {
    const int version = header.at("format_version").get<int>();
    if (version != ActivationArchive::kFormatVersion) {
      throw ValidationError("version mismatch: format_version " + std::to_string(version));
    }
    if (header.at("dtype") != "float32" || header.at("byte_order") != "little" ||
        header.at("layout") != "sample_layer_dim") {
      throw ValidationError("unsupported dtype/byte_order/layout in header.json");
    }
    const auto dim = [&](const char* key) {
      const auto& v = header.at(key);
      if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw ValidationError(std::string(key) + " must be an integer >= 1");
      }
      return v.get<std::size_t>();
    };
    n = dim("num_samples");
    l = dim("num_layers");
    h = dim("hidden_dim");
    manifest = manifest_from_json(header.at("manifest"));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed header.json: ") + e.what());
  }

  const std::uintmax_t expected_bytes = static_cast<std::uintmax_t>(n) * l * h * sizeof(float);
  std::error_code ec;
  const std::uintmax_t actual_bytes = fs::file_size(data_path, ec);
  if (ec) throw IoError("cannot stat " + data_path.string() + ": " + ec.message());
  if (actual_bytes != expected_bytes) {
    throw ValidationError("size mismatch: activations.f32 has " + std::to_string(actual_bytes) +
                          " bytes, header implies " + std::to_string(expected_bytes));
  }

  std::vector<float> data(n * l * h);
  {
    std::ifstream in(data_path, std::ios::binary);
    if (!in) throw IoError("cannot open " + data_path.string());
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(expected_bytes));
    if (!in) throw IoError("short read on " + data_path.string());
  }
  return ActivationArchive(n, l, h, std::move(data), std::move(manifest));
}

LayerSlice layer_slice(const ActivationArchive& archive, std::size_t layer_index) {
  if (layer_index >= archive.num_layers()) {
    throw std::out_of_range("layer index " + std::to_string(layer_index) + " out of range [0, " +
                            std::to_string(archive.num_layers()) + ")");
  }
  LayerSlice slice{layer_index, Matrix(archive.num_samples(), archive.hidden_dim())};
  for (std::size_t i = 0; i < archive.num_samples(); ++i) {
    simd::widen(archive.vector(i, layer_index), slice.points.row(i));
  }
  return slice;
}

}  // namespace repgeom
