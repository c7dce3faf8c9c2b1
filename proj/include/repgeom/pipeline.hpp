#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string_view>
#include <string>
#include <vector>

#include "repgeom/activation_store.hpp"
#include "repgeom/embed.hpp"
#include "repgeom/metrics.hpp"

namespace repgeom {

struct AnalysisConfig {
  EddConfig edd;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct LayerMetrics {
  int block = 0;  // 1-based
  EddResult edd;
  GdvResult gdv_narrative;
  GdvResult gdv_style;
  double mean_distance = 0.0;
};

struct AnalysisReport {
  std::vector<LayerMetrics> per_layer;
  int argmin_gdv_narrative = 0;
  int argmin_gdv_style = 0;
  // Config echo. Thread count is not echoed: it never changes results.
  int bins = 0;
  int ref_draws = 0;
  std::uint64_t seed = 0;
  std::string simd_level;
  std::size_t num_samples = 0;
  std::size_t hidden_dim = 0;
  std::vector<std::string> warnings;
};

/// First block (1-based) attaining the minimum; 0 for an empty list.
int argmin_block(const std::vector<double>& values);

/// Per-layer EDD, narrative/style GDV and mean distance. Layers run on a
/// worker pool; output is bit-identical for any thread count.
AnalysisReport analyze(const ActivationArchive& archive, const AnalysisConfig& config);

enum class EmbedMethod { classical, smacof };

EmbedMethod parse_embed_method(std::string_view name);
std::string_view to_string(EmbedMethod method);

struct EmbedConfig {
  EmbedMethod method = EmbedMethod::smacof;
  SmacofOptions smacof;
  unsigned threads = 0;
};

/// One 2D embedding per layer from the layer's Euclidean distance matrix.
/// SMACOF runs are initialized with classical MDS.
std::vector<Embedding2D> project_layers(const ActivationArchive& archive,
                                        const EmbedConfig& config);

/// Runs fn(0..count-1) on up to `threads` workers (0 = hardware concurrency).
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace repgeom
