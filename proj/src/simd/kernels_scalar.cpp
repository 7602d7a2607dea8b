#include "kernels_internal.hpp"

namespace sabl::simd::detail {
namespace {

double max_value(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  double m = v[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] > m) m = v[i];
  }
  return m;
}

double min_value(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  double m = v[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] < m) m = v[i];
  }
  return m;
}

void divide(const double* in, double divisor, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = in[i] / divisor;
}

void subtract(const double* in, double offset, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = in[i] - offset;
}

void blend(const double* a, const double* b, double alpha, double* out, std::size_t n) {
  const double keep = 1.0 - alpha;
  for (std::size_t i = 0; i < n; ++i) {
    const double lhs = keep * a[i];
    const double rhs = alpha * b[i];
    out[i] = lhs + rhs;
  }
}

std::size_t count_greater(const double* v, std::size_t n, double threshold) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += v[i] > threshold ? 1 : 0;
  return c;
}

std::size_t count_equal(const double* v, std::size_t n, double value) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += v[i] == value ? 1 : 0;
  return c;
}

}  // namespace

const KernelTable kScalarKernels{Isa::kScalar, max_value,     min_value,  divide,
                                 subtract,     blend,         count_greater, count_equal};

}  // namespace sabl::simd::detail
