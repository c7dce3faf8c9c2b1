// AVX2 variants. Compiled with a function-level target attribute so the rest
// of the library stays baseline x86-64; dispatch.cpp only routes here after a
// CPUID check.

#include "repgeom/simd/kernels.hpp"

#if defined(REPGEOM_ENABLE_SIMD) && (defined(__x86_64__) || defined(_M_X64))
#define REPGEOM_HAVE_AVX2_TU 1
#include <immintrin.h>
#endif

namespace repgeom::simd::avx2 {

#if REPGEOM_HAVE_AVX2_TU

#define REPGEOM_AVX2 __attribute__((target("avx2")))

// Four independent accumulators of four lanes each; lanes are folded in a
// fixed order so the result is deterministic for a given n. No FMA: every
// product is rounded before it is added, like the scalar path.
REPGEOM_AVX2 double squared_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 16 <= n; k += 16) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4));
    const __m256d d2 = _mm256_sub_pd(_mm256_loadu_pd(a + k + 8), _mm256_loadu_pd(b + k + 8));
    const __m256d d3 = _mm256_sub_pd(_mm256_loadu_pd(a + k + 12), _mm256_loadu_pd(b + k + 12));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
    acc2 = _mm256_add_pd(acc2, _mm256_mul_pd(d2, d2));
    acc3 = _mm256_add_pd(acc3, _mm256_mul_pd(d3, d3));
  }
  for (; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d, d));
  }
  const __m256d acc = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; k < n; ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return sum;
}

REPGEOM_AVX2 void widen(const float* in, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(out + k, _mm256_cvtps_pd(_mm_loadu_ps(in + k)));
  }
  for (; k < n; ++k) out[k] = static_cast<double>(in[k]);
}

REPGEOM_AVX2 void center_scale(const double* in, double mean, double scale, double* out,
                               std::size_t n) {
  const __m256d m = _mm256_set1_pd(mean);
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(out + k, _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(in + k), m), s));
  }
  for (; k < n; ++k) out[k] = (in[k] - mean) * scale;
}

#undef REPGEOM_AVX2

#else

double squared_distance(const double* a, const double* b, std::size_t n) {
  return scalar::squared_distance(a, b, n);
}
void widen(const float* in, double* out, std::size_t n) { scalar::widen(in, out, n); }
void center_scale(const double* in, double mean, double scale, double* out, std::size_t n) {
  scalar::center_scale(in, mean, scale, out, n);
}

#endif

}  // namespace repgeom::simd::avx2
