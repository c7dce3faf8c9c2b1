#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace repgeom {

struct StyleLabel {
  int id = 0;
  std::string name;
  std::string prompt_template;  // empty for the unmodified original text

  bool operator==(const StyleLabel&) const = default;
};

struct NarrativeLabel {
  int id = 0;
  std::string title;

  bool operator==(const NarrativeLabel&) const = default;
};

struct SampleRecord {
  int sample_id = 0;
  int narrative_id = 0;
  int style_id = 0;
  std::string text_digest;  // lowercase hex SHA-256, 64 chars
  int word_count = 0;

  bool operator==(const SampleRecord&) const = default;
};

struct CorpusManifest {
  static constexpr int kFormatVersion = 1;

  std::vector<NarrativeLabel> narratives;
  std::vector<StyleLabel> styles;
  std::vector<SampleRecord> samples;
  std::vector<std::string> protocol;

  bool operator==(const CorpusManifest&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  bool grid_complete = false;

  bool ok() const noexcept { return violations.empty(); }
};

enum class LabelKey { narrative, style };

/// Parses "narrative" or "style"; anything else throws std::invalid_argument.
LabelKey parse_label_key(std::string_view key);
std::string_view to_string(LabelKey key);

ValidationReport validate_manifest(const CorpusManifest& manifest);

/// Per-sample label ids in sample_id order. Throws std::invalid_argument if a
/// sample references an id not present in the label set.
std::vector<int> label_vector(const CorpusManifest& manifest, LabelKey key);

/// Narratives, styles and prompt protocol of the ten-fable, seven-style grid.
/// The returned manifest has no samples.
CorpusManifest fable_grid_template();

/// Lowercase hex SHA-256 of text after CRLF/CR → LF normalization.
std::string text_digest(std::string_view text);

/// Whitespace-delimited token count.
int count_words(std::string_view text);

/// Checks each sample's digest against `<dir>/<narrative_id>_<style_id>.txt`.
/// Returns one message per missing or mismatched file.
std::vector<std::string> verify_texts(const CorpusManifest& manifest,
                                      const std::filesystem::path& dir);

nlohmann::json manifest_to_json(const CorpusManifest& manifest);
/// Throws ValidationError on schema problems or a format_version other than 1.
CorpusManifest manifest_from_json(const nlohmann::json& j);

void save_manifest(const CorpusManifest& manifest, const std::filesystem::path& path);
CorpusManifest load_manifest(const std::filesystem::path& path);

}  // namespace repgeom
