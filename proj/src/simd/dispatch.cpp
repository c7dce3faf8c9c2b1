#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "repgeom/simd/kernels.hpp"

namespace repgeom::simd {

namespace {

bool cpu_has(Level level) {
  switch (level) {
    case Level::scalar:
      return true;
    case Level::avx2:
#if defined(REPGEOM_ENABLE_SIMD) && (defined(__x86_64__) || defined(_M_X64)) && \
    (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Level::neon:
#if defined(REPGEOM_ENABLE_SIMD) && defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

constexpr int kUnset = -1;
std::atomic<int> g_level{kUnset};

Level current() {
  int v = g_level.load(std::memory_order_acquire);
  if (v == kUnset) {
    int expected = kUnset;
    g_level.compare_exchange_strong(expected, static_cast<int>(detect_level()),
                                    std::memory_order_acq_rel);
    v = g_level.load(std::memory_order_acquire);
  }
  return static_cast<Level>(v);
}

}  // namespace

std::string_view to_string(Level level) {
  switch (level) {
    case Level::scalar:
      return "scalar";
    case Level::avx2:
      return "avx2";
    case Level::neon:
      return "neon";
  }
  return "unknown";
}

bool level_available(Level level) { return cpu_has(level); }

Level detect_level() {
  Level best = Level::scalar;
  if (cpu_has(Level::avx2)) best = Level::avx2;
  if (cpu_has(Level::neon)) best = Level::neon;
  if (const char* env = std::getenv("REPGEOM_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Level::scalar;
    if (want == "avx2" && cpu_has(Level::avx2)) return Level::avx2;
    if (want == "neon" && cpu_has(Level::neon)) return Level::neon;
  }
  return best;
}

Level active_level() { return current(); }

bool set_active_level(Level level) {
  if (!cpu_has(level)) return false;
  g_level.store(static_cast<int>(level), std::memory_order_release);
  return true;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("squared_distance: length mismatch");
  switch (current()) {
    case Level::avx2:
      return avx2::squared_distance(a.data(), b.data(), a.size());
    case Level::neon:
      return neon::squared_distance(a.data(), b.data(), a.size());
    case Level::scalar:
      break;
  }
  return scalar::squared_distance(a.data(), b.data(), a.size());
}

void widen(std::span<const float> in, std::span<double> out) {
  if (in.size() != out.size()) throw std::invalid_argument("widen: length mismatch");
  switch (current()) {
    case Level::avx2:
      return avx2::widen(in.data(), out.data(), in.size());
    case Level::neon:
      return neon::widen(in.data(), out.data(), in.size());
    case Level::scalar:
      break;
  }
  scalar::widen(in.data(), out.data(), in.size());
}

void center_scale(std::span<const double> in, double mean, double scale, std::span<double> out) {
  if (in.size() != out.size()) throw std::invalid_argument("center_scale: length mismatch");
  switch (current()) {
    case Level::avx2:
      return avx2::center_scale(in.data(), mean, scale, out.data(), in.size());
    case Level::neon:
      return neon::center_scale(in.data(), mean, scale, out.data(), in.size());
    case Level::scalar:
      break;
  }
  scalar::center_scale(in.data(), mean, scale, out.data(), in.size());
}

}  // namespace repgeom::simd
