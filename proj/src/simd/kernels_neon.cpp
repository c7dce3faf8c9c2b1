#include "repgeom/simd/kernels.hpp"

#if defined(REPGEOM_ENABLE_SIMD) && defined(__aarch64__)
#define REPGEOM_HAVE_NEON_TU 1
#include <arm_neon.h>
#endif

namespace repgeom::simd::neon {

#if REPGEOM_HAVE_NEON_TU

double squared_distance(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const float64x2_t d0 = vsubq_f64(vld1q_f64(a + k), vld1q_f64(b + k));
    const float64x2_t d1 = vsubq_f64(vld1q_f64(a + k + 2), vld1q_f64(b + k + 2));
    acc0 = vaddq_f64(acc0, vmulq_f64(d0, d0));
    acc1 = vaddq_f64(acc1, vmulq_f64(d1, d1));
  }
  const float64x2_t acc = vaddq_f64(acc0, acc1);
  double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; k < n; ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return sum;
}

void widen(const float* in, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const float32x4_t v = vld1q_f32(in + k);
    vst1q_f64(out + k, vcvt_f64_f32(vget_low_f32(v)));
    vst1q_f64(out + k + 2, vcvt_high_f64_f32(v));
  }
  for (; k < n; ++k) out[k] = static_cast<double>(in[k]);
}

void center_scale(const double* in, double mean, double scale, double* out, std::size_t n) {
  const float64x2_t m = vdupq_n_f64(mean);
  const float64x2_t s = vdupq_n_f64(scale);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    vst1q_f64(out + k, vmulq_f64(vsubq_f64(vld1q_f64(in + k), m), s));
  }
  for (; k < n; ++k) out[k] = (in[k] - mean) * scale;
}

#else

double squared_distance(const double* a, const double* b, std::size_t n) {
  return scalar::squared_distance(a, b, n);
}
void widen(const float* in, double* out, std::size_t n) { scalar::widen(in, out, n); }
void center_scale(const double* in, double mean, double scale, double* out, std::size_t n) {
  scalar::center_scale(in, mean, scale, out, n);
}

#endif

}  // namespace repgeom::simd::neon
