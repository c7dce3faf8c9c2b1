#include "repgeom/simd/kernels.hpp"

namespace repgeom::simd::scalar {

double squared_distance(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double diff = a[k] - b[k];
    acc += diff * diff;
  }
  return acc;
}

void widen(const float* in, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<double>(in[k]);
}

void center_scale(const double* in, double mean, double scale, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = (in[k] - mean) * scale;
}

}  // namespace repgeom::simd::scalar
