#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "repgeom/corpus.hpp"
#include "repgeom/matrix.hpp"

namespace repgeom {

/// Per-sample, per-block CLS activations. Data layout is C-order
/// [sample][layer][dim]; layer indices are 0-based here and reported as
/// 1-based block numbers by the pipeline.
class ActivationArchive {
 public:
  static constexpr int kFormatVersion = 1;
  static constexpr const char* kHeaderFile = "header.json";
  static constexpr const char* kDataFile = "activations.f32";

  ActivationArchive() = default;
  /// Throws ValidationError if shape, manifest size, or finiteness invariants fail.
  ActivationArchive(std::size_t num_samples, std::size_t num_layers, std::size_t hidden_dim,
                    std::vector<float> data, CorpusManifest manifest);

  std::size_t num_samples() const noexcept { return num_samples_; }
  std::size_t num_layers() const noexcept { return num_layers_; }
  std::size_t hidden_dim() const noexcept { return hidden_dim_; }
  std::span<const float> data() const noexcept { return data_; }
  const CorpusManifest& manifest() const noexcept { return manifest_; }

  std::size_t offset(std::size_t sample, std::size_t layer) const noexcept {
    return (sample * num_layers_ + layer) * hidden_dim_;
  }
  std::span<const float> vector(std::size_t sample, std::size_t layer) const noexcept {
    return data().subspan(offset(sample, layer), hidden_dim_);
  }

 private:
  std::size_t num_samples_ = 0;
  std::size_t num_layers_ = 0;
  std::size_t hidden_dim_ = 0;
  std::vector<float> data_;
  CorpusManifest manifest_;
};

struct LayerSlice {
  std::size_t layer_index = 0;
  Matrix points;  // num_samples × hidden_dim, row i is sample_id i
};

/// Writes header.json and activations.f32 into `dir` (created if absent).
/// Throws ValidationError on non-finite data, IoError on filesystem failure.
void write_archive(const ActivationArchive& archive, const std::filesystem::path& dir);

/// Throws IoError for missing/unreadable files and ValidationError for
/// header, size, version, manifest, or finiteness problems.
ActivationArchive read_archive(const std::filesystem::path& dir);

/// Throws std::out_of_range if layer_index >= num_layers.
LayerSlice layer_slice(const ActivationArchive& archive, std::size_t layer_index);

}  // namespace repgeom
