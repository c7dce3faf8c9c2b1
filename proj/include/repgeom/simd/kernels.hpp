#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace repgeom::simd {

enum class Level { scalar, avx2, neon };

std::string_view to_string(Level level);

/// Best level supported by the build and the running CPU. The environment
/// variable REPGEOM_SIMD=scalar|avx2|neon caps the selection.
Level detect_level();

/// Level used by the dispatching entry points below. Fixed at first use to
/// detect_level() unless overridden.
Level active_level();

/// Overrides dispatch. Returns false (and leaves dispatch unchanged) if the
/// level is not available on this build/CPU.
bool set_active_level(Level level);

bool level_available(Level level);

/// Σ_k (a_k − b_k)². a.size() must equal b.size().
double squared_distance(std::span<const double> a, std::span<const double> b);

/// Exact float32 → float64 widening.
void widen(std::span<const float> in, std::span<double> out);

/// Writes (x − mean)·scale elementwise.
void center_scale(std::span<const double> in, double mean, double scale, std::span<double> out);

// Per-level implementations, exposed for equivalence tests.
namespace scalar {
double squared_distance(const double* a, const double* b, std::size_t n);
void widen(const float* in, double* out, std::size_t n);
void center_scale(const double* in, double mean, double scale, double* out, std::size_t n);
}  // namespace scalar

namespace avx2 {
double squared_distance(const double* a, const double* b, std::size_t n);
void widen(const float* in, double* out, std::size_t n);
void center_scale(const double* in, double mean, double scale, double* out, std::size_t n);
}  // namespace avx2

namespace neon {
double squared_distance(const double* a, const double* b, std::size_t n);
void widen(const float* in, double* out, std::size_t n);
void center_scale(const double* in, double mean, double scale, double* out, std::size_t n);
}  // namespace neon

}  // namespace repgeom::simd
