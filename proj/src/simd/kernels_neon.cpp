#include "kernels_internal.hpp"

#if defined(SABL_HAVE_NEON_KERNELS)

#include <arm_neon.h>

namespace sabl::simd::detail {
namespace {

double max_value(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  std::size_t i = 0;
  double m = v[0];
  if (n >= 2) {
    float64x2_t acc = vld1q_f64(v);
    for (i = 2; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vld1q_f64(v + i));
    const double l0 = vgetq_lane_f64(acc, 0);
    const double l1 = vgetq_lane_f64(acc, 1);
    m = l1 > l0 ? l1 : l0;
  }
  for (; i < n; ++i) {
    if (v[i] > m) m = v[i];
  }
  return m;
}

double min_value(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  std::size_t i = 0;
  double m = v[0];
  if (n >= 2) {
    float64x2_t acc = vld1q_f64(v);
    for (i = 2; i + 2 <= n; i += 2) acc = vminq_f64(acc, vld1q_f64(v + i));
    const double l0 = vgetq_lane_f64(acc, 0);
    const double l1 = vgetq_lane_f64(acc, 1);
    m = l1 < l0 ? l1 : l0;
  }
  for (; i < n; ++i) {
    if (v[i] < m) m = v[i];
  }
  return m;
}

void divide(const double* in, double divisor, double* out, std::size_t n) {
  const float64x2_t d = vdupq_n_f64(divisor);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vdivq_f64(vld1q_f64(in + i), d));
  for (; i < n; ++i) out[i] = in[i] / divisor;
}

void subtract(const double* in, double offset, double* out, std::size_t n) {
  const float64x2_t o = vdupq_n_f64(offset);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vsubq_f64(vld1q_f64(in + i), o));
  for (; i < n; ++i) out[i] = in[i] - offset;
}

void blend(const double* a, const double* b, double alpha, double* out, std::size_t n) {
  const double keep = 1.0 - alpha;
  const float64x2_t wk = vdupq_n_f64(keep);
  const float64x2_t wa = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t lhs = vmulq_f64(wk, vld1q_f64(a + i));
    const float64x2_t rhs = vmulq_f64(wa, vld1q_f64(b + i));
    vst1q_f64(out + i, vaddq_f64(lhs, rhs));
  }
  for (; i < n; ++i) {
    const double lhs = keep * a[i];
    const double rhs = alpha * b[i];
    out[i] = lhs + rhs;
  }
}

std::size_t count_greater(const double* v, std::size_t n, double threshold) {
  const float64x2_t t = vdupq_n_f64(threshold);
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vsubq_u64(acc, vcgtq_f64(vld1q_f64(v + i), t));  // true lanes are all-ones (-1)
  }
  std::size_t c = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  for (; i < n; ++i) c += v[i] > threshold ? 1 : 0;
  return c;
}

std::size_t count_equal(const double* v, std::size_t n, double value) {
  const float64x2_t t = vdupq_n_f64(value);
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vsubq_u64(acc, vceqq_f64(vld1q_f64(v + i), t));
  std::size_t c = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  for (; i < n; ++i) c += v[i] == value ? 1 : 0;
  return c;
}

}  // namespace

const KernelTable kNeonKernels{Isa::kNeon, max_value,     min_value,  divide,
                               subtract,   blend,         count_greater, count_equal};

}  // namespace sabl::simd::detail

#endif
