#include "repgeom/corpus.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "repgeom/error.hpp"

namespace repgeom {

namespace {

bool is_lower_hex64(std::string_view s) {
  return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

template <class Label>
void check_ids(const std::vector<Label>& labels, std::string_view what,
               std::vector<std::string>& violations) {
  if (labels.empty()) {
    violations.push_back("no " + std::string(what) + "s");
    return;
  }
  std::vector<int> ids;
  for (const auto& l : labels) ids.push_back(l.id);
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] != static_cast<int>(i) + 1) {
      violations.push_back(std::string(what) + " ids must be unique and contiguous from 1");
      return;
    }
  }
}

std::string cell_name(int narrative, int style) {
  return "(narrative " + std::to_string(narrative) + ", style " + std::to_string(style) + ")";
}

}  // namespace

LabelKey parse_label_key(std::string_view key) {
  if (key == "narrative") return LabelKey::narrative;
  if (key == "style") return LabelKey::style;
  throw std::invalid_argument("unknown label key '" + std::string(key) + "'");
}

std::string_view to_string(LabelKey key) {
  return key == LabelKey::narrative ? "narrative" : "style";
}

ValidationReport validate_manifest(const CorpusManifest& manifest) {
  ValidationReport report;
  auto& v = report.violations;

  check_ids(manifest.narratives, "narrative", v);
  check_ids(manifest.styles, "style", v);

  const auto empty_templates =
      std::count_if(manifest.styles.begin(), manifest.styles.end(),
                    [](const StyleLabel& s) { return s.prompt_template.empty(); });
  if (empty_templates > 1) v.push_back("more than one style has an empty prompt_template");

  if (manifest.protocol.size() != 3) {
    v.push_back("protocol must hold 3 prompts, found " + std::to_string(manifest.protocol.size()));
  }

  if (manifest.samples.empty()) {
    v.push_back("no samples");
    return report;
  }

  std::set<int> narrative_ids;
  std::set<int> style_ids;
  for (const auto& n : manifest.narratives) narrative_ids.insert(n.id);
  for (const auto& s : manifest.styles) style_ids.insert(s.id);

  std::set<std::pair<int, int>> cells;
  for (std::size_t i = 0; i < manifest.samples.size(); ++i) {
    const SampleRecord& s = manifest.samples[i];
    const std::string where = "sample " + std::to_string(i);
    if (s.sample_id != static_cast<int>(i)) {
      v.push_back(where + ": sample_id " + std::to_string(s.sample_id) +
                  " out of order (expected " + std::to_string(i) + ")");
    }
    if (!narrative_ids.count(s.narrative_id)) {
      v.push_back(where + ": unknown narrative_id " + std::to_string(s.narrative_id));
    }
    if (!style_ids.count(s.style_id)) {
      v.push_back(where + ": unknown style_id " + std::to_string(s.style_id));
    }
    if (!cells.emplace(s.narrative_id, s.style_id).second) {
      v.push_back(where + ": duplicate cell " + cell_name(s.narrative_id, s.style_id));
    }
    if (s.word_count <= 0) v.push_back(where + ": word_count must be > 0");
    if (!is_lower_hex64(s.text_digest)) {
      v.push_back(where + ": text_digest is not 64 lowercase hex chars");
    }
  }

  const std::size_t full = manifest.narratives.size() * manifest.styles.size();
  report.grid_complete = v.empty() && manifest.samples.size() == full;
  if (v.empty() && !report.grid_complete) {
    std::string missing;
    for (int n : narrative_ids) {
      for (int s : style_ids) {
        if (!cells.count({n, s})) missing += (missing.empty() ? "" : ", ") + cell_name(n, s);
      }
    }
    report.warnings.push_back("partial grid: " + std::to_string(manifest.samples.size()) + " of " +
                              std::to_string(full) + " cells; missing " + missing);
  }
  return report;
}

std::vector<int> label_vector(const CorpusManifest& manifest, LabelKey key) {
  std::set<int> known;
  if (key == LabelKey::narrative) {
    for (const auto& n : manifest.narratives) known.insert(n.id);
  } else {
    for (const auto& s : manifest.styles) known.insert(s.id);
  }
  std::vector<const SampleRecord*> ordered;
  for (const auto& s : manifest.samples) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const SampleRecord* a, const SampleRecord* b) {
                     return a->sample_id < b->sample_id;
                   });
  std::vector<int> labels;
  labels.reserve(ordered.size());
  for (const SampleRecord* s : ordered) {
    const int id = key == LabelKey::narrative ? s->narrative_id : s->style_id;
    if (!known.count(id)) {
      throw std::invalid_argument("sample " + std::to_string(s->sample_id) + " has unknown " +
                                  std::string(to_string(key)) + " id " + std::to_string(id));
    }
    labels.push_back(id);
  }
  return labels;
}

CorpusManifest fable_grid_template() {
  CorpusManifest m;
  const char* titles[] = {"The Town Mouse and the Country Mouse",
                          "The Owl and the Grasshopper",
                          "Mercury and the Woodman",
                          "The Cat, the Cock and the Young Mouse",
                          "The Ass and the Lap Dog",
                          "The Wolf and the House Dog",
                          "The Fox without a Tail",
                          "The Bees and Wasps and the Hornet",
                          "The Lark and Her Young Ones",
                          "The Cat and the Old Rat"};
  for (int i = 0; i < 10; ++i) m.narratives.push_back({i + 1, titles[i]});

  m.styles = {
      {1, "Adventure Tale", "Rephrase the fable into an adventure tale"},
      {2, "Children Story", "Rephrase the fable into a children's story"},
      {3, "Comedy Version", "Rephrase the fable into a comedic version"},
      {4, "Historical Context", "Rephrase the fable in a historical context"},
      {5, "Mystery Story", "Rephrase the fable into a mystery story"},
      {6, "Original", ""},
      {7, "Science-Fiction Setting", "Rephrase the fable into a science-fiction setting"},
  };

  m.protocol = {
      "Hello I have a fable that I'd like to present in different narrative styles. My request is "
      "for you to creatively rephrase the fable into each of these styles. Please maintain the "
      "core message of the fable in each variation but feel free to be creative with the settings "
      "and styles.",
      "{fable}",
      "{style_prompt}",
  };
  return m;
}

std::string text_digest(std::string_view text) {
  std::string normalized;
  normalized.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      normalized.push_back('\n');
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      normalized.push_back(text[i]);
    }
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(normalized.data(), normalized.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

int count_words(std::string_view text) {
  int words = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    const bool space = std::isspace(c) != 0;
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

std::vector<std::string> verify_texts(const CorpusManifest& manifest,
                                      const std::filesystem::path& dir) {
  std::vector<std::string> problems;
  for (const auto& s : manifest.samples) {
    const auto file =
        dir / (std::to_string(s.narrative_id) + "_" + std::to_string(s.style_id) + ".txt");
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      problems.push_back("missing text file " + file.string());
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (text_digest(buf.str()) != s.text_digest) {
      problems.push_back("digest mismatch for " + file.string());
    }
  }
  return problems;
}

nlohmann::json manifest_to_json(const CorpusManifest& m) {
  nlohmann::json j;
  j["format_version"] = CorpusManifest::kFormatVersion;
  j["narratives"] = nlohmann::json::array();
  for (const auto& n : m.narratives) j["narratives"].push_back({{"id", n.id}, {"title", n.title}});
  j["styles"] = nlohmann::json::array();
  for (const auto& s : m.styles) {
    j["styles"].push_back(
        {{"id", s.id}, {"name", s.name}, {"prompt_template", s.prompt_template}});
  }
  j["samples"] = nlohmann::json::array();
  for (const auto& s : m.samples) {
    j["samples"].push_back({{"sample_id", s.sample_id},
                            {"narrative_id", s.narrative_id},
                            {"style_id", s.style_id},
                            {"text_digest", s.text_digest},
                            {"word_count", s.word_count}});
  }
  j["protocol"] = m.protocol;
  return j;
}

CorpusManifest manifest_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ValidationError("manifest must be a JSON object");
    const int version = j.at("format_version").get<int>();
    if (version != CorpusManifest::kFormatVersion) {
      throw ValidationError("unsupported manifest format_version " + std::to_string(version));
    }
    CorpusManifest m;
    for (const auto& n : j.at("narratives")) {
      m.narratives.push_back({n.at("id").get<int>(), n.at("title").get<std::string>()});
    }
    for (const auto& s : j.at("styles")) {
      m.styles.push_back({s.at("id").get<int>(), s.at("name").get<std::string>(),
                          s.at("prompt_template").get<std::string>()});
    }
    for (const auto& s : j.at("samples")) {
      m.samples.push_back({s.at("sample_id").get<int>(), s.at("narrative_id").get<int>(),
                           s.at("style_id").get<int>(), s.at("text_digest").get<std::string>(),
                           s.at("word_count").get<int>()});
    }
    m.protocol = j.at("protocol").get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
}

void save_manifest(const CorpusManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << manifest_to_json(manifest).dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

CorpusManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return manifest_from_json(j);
}

}  // namespace repgeom
