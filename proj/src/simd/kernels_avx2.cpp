#include "kernels_internal.hpp"

#if defined(SABL_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#define SABL_TARGET_AVX2 __attribute__((target("avx2")))

namespace sabl::simd::detail {
namespace {

SABL_TARGET_AVX2 double max_value(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  std::size_t i = 0;
  double m = v[0];
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(v);
    for (i = 4; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(v + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    m = lanes[0];
    for (int k = 1; k < 4; ++k) {
      if (lanes[k] > m) m = lanes[k];
    }
  }
  for (; i < n; ++i) {
    if (v[i] > m) m = v[i];
  }
  return m;
}

SABL_TARGET_AVX2 double min_value(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  std::size_t i = 0;
  double m = v[0];
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(v);
    for (i = 4; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(v + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    m = lanes[0];
    for (int k = 1; k < 4; ++k) {
      if (lanes[k] < m) m = lanes[k];
    }
  }
  for (; i < n; ++i) {
    if (v[i] < m) m = v[i];
  }
  return m;
}

SABL_TARGET_AVX2 void divide(const double* in, double divisor, double* out, std::size_t n) {
  const __m256d d = _mm256_set1_pd(divisor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(in + i), d));
  for (; i < n; ++i) out[i] = in[i] / divisor;
}

SABL_TARGET_AVX2 void subtract(const double* in, double offset, double* out, std::size_t n) {
  const __m256d o = _mm256_set1_pd(offset);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(in + i), o));
  for (; i < n; ++i) out[i] = in[i] - offset;
}

SABL_TARGET_AVX2 void blend(const double* a, const double* b, double alpha, double* out,
                            std::size_t n) {
  const double keep = 1.0 - alpha;
  const __m256d wk = _mm256_set1_pd(keep);
  const __m256d wa = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lhs = _mm256_mul_pd(wk, _mm256_loadu_pd(a + i));
    const __m256d rhs = _mm256_mul_pd(wa, _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(lhs, rhs));
  }
  for (; i < n; ++i) {
    const double lhs = keep * a[i];
    const double rhs = alpha * b[i];
    out[i] = lhs + rhs;
  }
}

SABL_TARGET_AVX2 std::size_t count_greater(const double* v, std::size_t n, double threshold) {
  const __m256d t = _mm256_set1_pd(threshold);
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(v + i), t, _CMP_GT_OQ));
    c += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) c += v[i] > threshold ? 1 : 0;
  return c;
}

SABL_TARGET_AVX2 std::size_t count_equal(const double* v, std::size_t n, double value) {
  const __m256d t = _mm256_set1_pd(value);
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(v + i), t, _CMP_EQ_OQ));
    c += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) c += v[i] == value ? 1 : 0;
  return c;
}

}  // namespace

const KernelTable kAvx2Kernels{Isa::kAvx2, max_value,     min_value,  divide,
                               subtract,   blend,         count_greater, count_equal};

}  // namespace sabl::simd::detail

#endif
