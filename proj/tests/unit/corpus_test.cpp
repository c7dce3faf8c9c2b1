#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "repgeom/corpus.hpp"
#include "repgeom/error.hpp"

using namespace repgeom;

namespace {

bool mentions(const std::vector<std::string>& msgs, std::string_view needle) {
  return std::any_of(msgs.begin(), msgs.end(),
                     [&](const std::string& m) { return m.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("fable grid template mirrors the ten-by-seven design") {
  const CorpusManifest m = fable_grid_template();
  CHECK(m.narratives.size() == 10);
  CHECK(m.styles.size() == 7);
  CHECK(m.narratives[0].title == "The Town Mouse and the Country Mouse");
  CHECK(m.styles[0].prompt_template == "Rephrase the fable into an adventure tale");
  CHECK(m.styles[5].name == "Original");
  CHECK(m.styles[5].prompt_template.empty());
  CHECK(std::count_if(m.styles.begin(), m.styles.end(),
                      [](const auto& s) { return s.prompt_template.empty(); }) == 1);
  REQUIRE(m.protocol.size() == 3);
  CHECK(m.protocol[0].rfind("Hello I have a fable", 0) == 0);
}

TEST_CASE("validate_manifest") {
  SUBCASE("full 10x7 grid is valid and complete") {
    const auto r = validate_manifest(testing::grid_manifest(10, 7));
    CHECK(r.ok());
    CHECK(r.grid_complete);
    CHECK(r.warnings.empty());
  }
  SUBCASE("empty sample list") {
    auto m = testing::grid_manifest(10, 7);
    m.samples.clear();
    const auto r = validate_manifest(m);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r.violations, "no samples"));
    CHECK_FALSE(r.grid_complete);
  }
  SUBCASE("duplicate cell") {
    auto m = testing::grid_manifest(10, 7);
    m.samples[1].narrative_id = 1;
    m.samples[1].style_id = 1;
    const auto r = validate_manifest(m);
    CHECK(mentions(r.violations, "duplicate cell"));
  }
  SUBCASE("partial grid is a warning, not a violation") {
    auto m = testing::grid_manifest(10, 7);
    m.samples.pop_back();
    const auto r = validate_manifest(m);
    CHECK(r.ok());
    CHECK_FALSE(r.grid_complete);
    CHECK(mentions(r.warnings, "(narrative 10, style 7)"));
  }
  SUBCASE("unresolved ids, bad counts and digests") {
    auto m = testing::grid_manifest(2, 2);
    m.samples[0].narrative_id = 9;
    m.samples[1].word_count = 0;
    m.samples[2].text_digest = "XYZ";
    m.samples[3].sample_id = 7;
    const auto r = validate_manifest(m);
    CHECK(mentions(r.violations, "unknown narrative_id 9"));
    CHECK(mentions(r.violations, "word_count"));
    CHECK(mentions(r.violations, "text_digest"));
    CHECK(mentions(r.violations, "out of order"));
  }
  SUBCASE("label ids must be contiguous from 1 and one empty template at most") {
    auto m = testing::grid_manifest(2, 2);
    m.narratives[1].id = 3;
    m.styles[0].prompt_template.clear();
    m.styles[1].prompt_template.clear();
    const auto r = validate_manifest(m);
    CHECK(mentions(r.violations, "narrative ids"));
    CHECK(mentions(r.violations, "empty prompt_template"));
  }
}

TEST_CASE("label_vector") {
  const auto m = testing::grid_manifest(10, 7);
  const auto narrative = label_vector(m, LabelKey::narrative);
  const auto style = label_vector(m, LabelKey::style);
  REQUIRE(narrative.size() == 70);
  REQUIRE(style.size() == 70);
  std::map<int, int> nc, sc;
  for (int v : narrative) ++nc[v];
  for (int v : style) ++sc[v];
  CHECK(nc.size() == 10);
  CHECK(sc.size() == 7);
  for (const auto& [k, c] : nc) CHECK((k >= 1 && k <= 10 && c == 7));
  for (const auto& [k, c] : sc) CHECK((k >= 1 && k <= 7 && c == 10));

  SUBCASE("single sample") {
    auto one = testing::grid_manifest(3, 2);
    one.samples = {one.samples[3]};
    one.samples[0].sample_id = 0;
    CHECK(label_vector(one, LabelKey::narrative) == std::vector<int>{one.samples[0].narrative_id});
  }
  SUBCASE("unknown key") {
    CHECK_THROWS_AS(parse_label_key("genre"), std::invalid_argument);
    CHECK(parse_label_key("style") == LabelKey::style);
  }
  SUBCASE("partial grids keep both vectors the same length") {
    auto p = testing::grid_manifest(4, 3);
    p.samples.resize(5);
    CHECK(label_vector(p, LabelKey::narrative).size() == label_vector(p, LabelKey::style).size());
  }
}

TEST_CASE("text_digest is SHA-256 over LF-normalized text") {
  CHECK(text_digest("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(text_digest("a\r\nb\rc\n") == text_digest("a\nb\nc\n"));
  CHECK(count_words("  Once upon\ta time\n") == 4);
  CHECK(count_words("") == 0);
}

TEST_CASE("verify_texts detects missing and edited files") {
  const auto dir = std::filesystem::temp_directory_path() / "repgeom_verify_texts";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  CorpusManifest m = testing::grid_manifest(1, 2);
  const std::string t1 = "The mouse left town.\r\n";
  m.samples[0].text_digest = text_digest(t1);
  std::ofstream(dir / "1_1.txt", std::ios::binary) << t1;
  CHECK(verify_texts(m, dir).size() == 1);  // 1_2.txt missing
  std::ofstream(dir / "1_2.txt", std::ios::binary) << "edited";
  const auto problems = verify_texts(m, dir);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("digest mismatch") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("manifest JSON round trip and schema errors") {
  const auto m = testing::grid_manifest(3, 2);
  const auto j = manifest_to_json(m);
  CHECK(j.at("format_version") == 1);
  CHECK(j.at("samples").at(0).contains("text_digest"));
  CHECK(manifest_from_json(j) == m);

  auto bad = j;
  bad["format_version"] = 2;
  CHECK_THROWS_AS(manifest_from_json(bad), ValidationError);
  bad = j;
  bad.erase("styles");
  CHECK_THROWS_AS(manifest_from_json(bad), ValidationError);
}
