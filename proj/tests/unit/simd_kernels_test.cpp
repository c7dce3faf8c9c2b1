#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "repgeom/simd/kernels.hpp"

using namespace repgeom;

namespace {

std::vector<simd::Level> available_levels() {
  std::vector<simd::Level> out;
  for (auto l : {simd::Level::scalar, simd::Level::avx2, simd::Level::neon}) {
    if (simd::level_available(l)) out.push_back(l);
  }
  return out;
}

double dispatch_squared_distance(simd::Level level, const std::vector<double>& a,
                                 const std::vector<double>& b) {
  switch (level) {
    case simd::Level::avx2: return simd::avx2::squared_distance(a.data(), b.data(), a.size());
    case simd::Level::neon: return simd::neon::squared_distance(a.data(), b.data(), a.size());
    case simd::Level::scalar: break;
  }
  return simd::scalar::squared_distance(a.data(), b.data(), a.size());
}

}  // namespace

TEST_CASE("scalar level is always available and selectable") {
  CHECK(simd::level_available(simd::Level::scalar));
  const auto before = simd::active_level();
  CHECK(simd::set_active_level(simd::Level::scalar));
  CHECK(simd::active_level() == simd::Level::scalar);
  CHECK(simd::set_active_level(before));
  CHECK(simd::to_string(simd::Level::avx2) == "avx2");
}

TEST_CASE("squared_distance variants agree with the scalar reference") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 3.0);
  for (simd::Level level : available_levels()) {
    CAPTURE(simd::to_string(level));
    for (std::size_t n = 0; n <= 70; ++n) {
      std::vector<double> a(n), b(n);
      for (auto& v : a) v = normal(rng);
      for (auto& v : b) v = normal(rng);
      const double ref = simd::scalar::squared_distance(a.data(), b.data(), n);
      const double got = dispatch_squared_distance(level, a, b);
      CHECK(std::abs(got - ref) <= 1e-13 * std::max(1.0, ref));
    }
    // 768 is the BERT hidden width.
    std::vector<double> a(768), b(768);
    for (auto& v : a) v = normal(rng);
    for (auto& v : b) v = normal(rng);
    const double ref = simd::scalar::squared_distance(a.data(), b.data(), 768);
    CHECK(std::abs(dispatch_squared_distance(level, a, b) - ref) <= 1e-13 * ref);
  }
}

TEST_CASE("squared_distance is exactly symmetric in its arguments") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  std::vector<double> a(37), b(37);
  for (auto& v : a) v = u(rng);
  for (auto& v : b) v = u(rng);
  for (simd::Level level : available_levels()) {
    CHECK(dispatch_squared_distance(level, a, b) == dispatch_squared_distance(level, b, a));
  }
}

TEST_CASE("widen and center_scale variants are bit-identical to scalar") {
  std::mt19937_64 rng(5);
  std::normal_distribution<float> normalf(0.0f, 10.0f);
  std::normal_distribution<double> normal(0.0, 10.0);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 768u}) {
    std::vector<float> f(n);
    std::vector<double> x(n);
    for (auto& v : f) v = normalf(rng);
    for (auto& v : x) v = normal(rng);
    std::vector<double> ref_w(n), ref_c(n), got_w(n), got_c(n);
    simd::scalar::widen(f.data(), ref_w.data(), n);
    simd::scalar::center_scale(x.data(), 1.25, 0.37, ref_c.data(), n);
    if (simd::level_available(simd::Level::avx2)) {
      simd::avx2::widen(f.data(), got_w.data(), n);
      simd::avx2::center_scale(x.data(), 1.25, 0.37, got_c.data(), n);
      CHECK(got_w == ref_w);
      CHECK(got_c == ref_c);
    }
    if (simd::level_available(simd::Level::neon)) {
      simd::neon::widen(f.data(), got_w.data(), n);
      simd::neon::center_scale(x.data(), 1.25, 0.37, got_c.data(), n);
      CHECK(got_w == ref_w);
      CHECK(got_c == ref_c);
    }
    for (std::size_t i = 0; i < n; ++i) CHECK(ref_w[i] == static_cast<double>(f[i]));
  }
}

TEST_CASE("dispatching entry points reject mismatched lengths") {
  std::vector<double> a(3), b(4);
  CHECK_THROWS_AS(simd::squared_distance(a, b), std::invalid_argument);
}
