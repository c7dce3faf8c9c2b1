#include <algorithm>
#include <cstring>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "fixtures.hpp"
#include "repgeom/activation_store.hpp"
#include "repgeom/error.hpp"
#include "test_util.hpp"

using namespace repgeom;
using repgeom::testing::fresh_dir;
using repgeom::testing::slurp;

namespace {

ActivationArchive ramp_archive(std::size_t n_narr, std::size_t n_style, std::size_t layers,
                               std::size_t h) {
  auto manifest = testing::grid_manifest(static_cast<int>(n_narr), static_cast<int>(n_style));
  const std::size_t n = manifest.samples.size();
  std::vector<float> data(n * layers * h);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<float>(i) * 0.25f - 3.0f;
  return ActivationArchive(n, layers, h, std::move(data), std::move(manifest));
}

}  // namespace

TEST_CASE("write_archive produces the documented byte layout") {
  SUBCASE("70 x 12 x 768") {
    const auto dir = fresh_dir("bert_shape");
    const auto archive = testing::isotropic_archive(10, 7, 12, 768, 1);
    write_archive(archive, dir);
    CHECK(std::filesystem::file_size(dir / "activations.f32") == 2'580'480u);
    const auto header = nlohmann::json::parse(slurp(dir / "header.json"));
    CHECK(header.at("format_version") == 1);
    CHECK(header.at("num_samples") == 70);
    CHECK(header.at("num_layers") == 12);
    CHECK(header.at("hidden_dim") == 768);
    CHECK(header.at("dtype") == "float32");
    CHECK(header.at("byte_order") == "little");
    CHECK(header.at("layout") == "sample_layer_dim");
    CHECK(header.at("manifest").at("samples").size() == 70);
  }
  SUBCASE("single zero value") {
    const auto dir = fresh_dir("single_zero");
    auto manifest = testing::grid_manifest(1, 1);
    write_archive(ActivationArchive(1, 1, 1, {0.0f}, manifest), dir);
    CHECK(slurp(dir / "activations.f32") == std::string(4, '\0'));
  }
  SUBCASE("index = (sample*L + layer)*H + dim, little-endian float32") {
    const auto dir = fresh_dir("layout");
    const auto archive = ramp_archive(2, 1, 3, 2);
    write_archive(archive, dir);
    const std::string bytes = slurp(dir / "activations.f32");
    float v = 0;
    const std::size_t idx = (1 * 3 + 2) * 2 + 1;
    std::memcpy(&v, bytes.data() + idx * 4, 4);
    CHECK(v == archive.vector(1, 2)[1]);
    CHECK(v == static_cast<float>(idx) * 0.25f - 3.0f);
  }
}

TEST_CASE("non-finite activations are refused") {
  auto manifest = testing::grid_manifest(1, 1);
  for (float bad : {std::numeric_limits<float>::quiet_NaN(), std::numeric_limits<float>::infinity()}) {
    try {
      ActivationArchive(1, 1, 2, {1.0f, bad}, manifest);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
    }
  }
}

TEST_CASE("read_archive round-trips bit-exactly") {
  const auto dir = fresh_dir("roundtrip");
  auto archive = testing::layered_archive(testing::paper_like_spec(8));
  write_archive(archive, dir);
  const std::string before = slurp(dir / "activations.f32");
  const auto back = read_archive(dir);
  CHECK(back.num_samples() == archive.num_samples());
  CHECK(back.num_layers() == archive.num_layers());
  CHECK(back.hidden_dim() == archive.hidden_dim());
  CHECK(back.manifest() == archive.manifest());
  CHECK(std::memcmp(back.data().data(), archive.data().data(), archive.data().size_bytes()) == 0);

  const auto dir2 = fresh_dir("roundtrip2");
  write_archive(back, dir2);
  CHECK(slurp(dir2 / "activations.f32") == before);
}

TEST_CASE("read_archive rejects damaged archives") {
  const auto archive = ramp_archive(10, 7, 2, 3);
  SUBCASE("truncated data file") {
    const auto dir = fresh_dir("truncated");
    write_archive(archive, dir);
    std::filesystem::resize_file(dir / "activations.f32",
                                 std::filesystem::file_size(dir / "activations.f32") - 4);
    try {
      read_archive(dir);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("size mismatch") != std::string::npos);
    }
  }
  SUBCASE("header sample count disagrees with manifest") {
    const auto dir = fresh_dir("manifest_mismatch");
    write_archive(archive, dir);
    auto header = nlohmann::json::parse(slurp(dir / "header.json"));
    header["manifest"]["samples"].erase(69);
    std::ofstream(dir / "header.json") << header.dump();
    CHECK_THROWS_AS(read_archive(dir), ValidationError);
  }
  SUBCASE("format version") {
    const auto dir = fresh_dir("version");
    write_archive(archive, dir);
    auto header = nlohmann::json::parse(slurp(dir / "header.json"));
    header["format_version"] = 2;
    std::ofstream(dir / "header.json") << header.dump();
    CHECK_THROWS_WITH_AS(read_archive(dir), doctest::Contains("version mismatch"), ValidationError);
  }
  SUBCASE("corrupt header") {
    const auto dir = fresh_dir("corrupt_header");
    write_archive(archive, dir);
    std::ofstream(dir / "header.json") << "{ not json";
    CHECK_THROWS_AS(read_archive(dir), ValidationError);
  }
  SUBCASE("missing files") {
    const auto dir = fresh_dir("missing");
    CHECK_THROWS_AS(read_archive(dir), IoError);
    CHECK_THROWS_AS(read_archive(dir / "nope"), IoError);
    write_archive(archive, dir);
    std::filesystem::remove(dir / "activations.f32");
    CHECK_THROWS_AS(read_archive(dir), IoError);
  }
  SUBCASE("NaN smuggled into the data file") {
    const auto dir = fresh_dir("nan_file");
    write_archive(archive, dir);
    std::fstream f(dir / "activations.f32", std::ios::in | std::ios::out | std::ios::binary);
    const float nan = std::numeric_limits<float>::quiet_NaN();
    f.seekp(8);
    f.write(reinterpret_cast<const char*>(&nan), 4);
    f.close();
    CHECK_THROWS_WITH_AS(read_archive(dir), doctest::Contains("non-finite"), ValidationError);
  }
}

TEST_CASE("layer_slice") {
  const auto archive = ramp_archive(3, 2, 4, 5);
  const auto s0 = layer_slice(archive, 0);
  CHECK(s0.layer_index == 0);
  REQUIRE(s0.points.rows() == 6);
  REQUIRE(s0.points.cols() == 5);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t d = 0; d < 5; ++d) {
      CHECK(s0.points(i, d) == static_cast<double>(archive.vector(i, 0)[d]));
    }
  }
  CHECK_THROWS_AS(layer_slice(archive, 4), std::out_of_range);

  SUBCASE("iterating all layers touches every element exactly once") {
    const auto rnd = testing::layered_archive(testing::paper_like_spec(6));
    std::vector<int> seen(rnd.data().size(), 0);
    std::size_t total = 0;
    for (std::size_t l = 0; l < rnd.num_layers(); ++l) {
      const auto s = layer_slice(rnd, l);
      total += s.points.data().size();
      for (std::size_t i = 0; i < s.points.rows(); ++i) {
        for (std::size_t d = 0; d < s.points.cols(); ++d) {
          const std::size_t idx = rnd.offset(i, l) + d;
          ++seen[idx];
          CHECK(s.points(i, d) == static_cast<double>(rnd.data()[idx]));
        }
      }
    }
    CHECK(total == rnd.num_samples() * rnd.num_layers() * rnd.hidden_dim());
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
}
