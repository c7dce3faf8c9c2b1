#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "repgeom/embed.hpp"
#include "repgeom/pipeline.hpp"

namespace repgeom {

/// Header row of metrics.csv.
inline constexpr const char* kMetricsCsvHeader = "block,edd,gdv_narrative,gdv_style,mean_distance";

std::string metrics_csv(const AnalysisReport& report);

nlohmann::json report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& j);

nlohmann::json embeddings_to_json(const std::vector<Embedding2D>& embeddings,
                                  std::string_view method);
std::vector<Embedding2D> embeddings_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace repgeom
