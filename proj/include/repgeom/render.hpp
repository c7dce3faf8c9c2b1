#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "repgeom/corpus.hpp"
#include "repgeom/embed.hpp"
#include "repgeom/pipeline.hpp"

namespace repgeom {

struct RenderOptions {
  std::vector<LabelKey> label_keys{LabelKey::narrative, LabelKey::style};
  std::vector<int> ellipse_blocks;  // 1-based; empty = {1, 4, L} clipped to L
};

/// Fill colour for a label id; stable across runs and plots.
std::string palette_color(int label_id);

std::string edd_curve_svg(const AnalysisReport& report);
std::string gdv_curves_svg(const AnalysisReport& report);
std::string scatter_svg(const std::vector<Embedding2D>& embeddings, const CorpusManifest& manifest,
                        LabelKey key);
std::string ellipses_svg(const Embedding2D& embedding, const CorpusManifest& manifest,
                         LabelKey key, int block);

/// Writes metrics.csv, report.json and the SVG figures into out_dir and
/// returns the written paths in write order. Throws std::invalid_argument on
/// inconsistent shapes and IoError on write failures.
std::vector<std::filesystem::path> render(const AnalysisReport& report,
                                          const std::vector<Embedding2D>& embeddings,
                                          const CorpusManifest& manifest,
                                          const std::filesystem::path& out_dir,
                                          const RenderOptions& options = {});

}  // namespace repgeom
