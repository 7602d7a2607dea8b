#pragma once

// Data-parallel inner loops of the re-ranking sweep.
//
// Every kernel has a scalar reference implementation and optional vector
// variants. Variants are selected once at runtime from the host CPU and
// must produce bit-identical results to the scalar reference: all kernels
// are element-wise IEEE operations or exact integer counts, and the build
// disables floating-point contraction.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace sabl::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  /// Largest element; returns 0 for empty input.
  double (*max_value)(const double* values, std::size_t n);
  /// Smallest element; returns 0 for empty input.
  double (*min_value)(const double* values, std::size_t n);
  /// out[i] = in[i] / divisor
  void (*divide)(const double* in, double divisor, double* out, std::size_t n);
  /// out[i] = in[i] - offset
  void (*subtract)(const double* in, double offset, double* out, std::size_t n);
  /// out[i] = (1 - alpha) * a[i] + alpha * b[i], evaluated as two products and one sum.
  void (*blend)(const double* a, const double* b, double alpha, double* out, std::size_t n);
  /// Number of elements strictly greater than threshold.
  std::size_t (*count_greater)(const double* values, std::size_t n, double threshold);
  /// Number of elements equal to value.
  std::size_t (*count_equal)(const double* values, std::size_t n, double value);
};

/// Kernels chosen for this process. SABL_SIMD=scalar|avx2|neon overrides
/// the automatic choice; an unsupported override falls back to scalar.
const KernelTable& kernels();

/// Kernel table for a specific instruction set. Requires is_supported(isa).
const KernelTable& kernels_for(Isa isa);

bool is_supported(Isa isa);

/// Instruction sets usable on this host, scalar first.
std::vector<Isa> supported_isas();

// Span conveniences over the active table.

inline double max_value(std::span<const double> v) { return kernels().max_value(v.data(), v.size()); }
inline double min_value(std::span<const double> v) { return kernels().min_value(v.data(), v.size()); }

inline void divide(std::span<const double> in, double divisor, std::span<double> out) {
  kernels().divide(in.data(), divisor, out.data(), in.size());
}

inline void subtract(std::span<const double> in, double offset, std::span<double> out) {
  kernels().subtract(in.data(), offset, out.data(), in.size());
}

inline void blend(std::span<const double> a, std::span<const double> b, double alpha,
                  std::span<double> out) {
  kernels().blend(a.data(), b.data(), alpha, out.data(), a.size());
}

inline std::size_t count_greater(std::span<const double> v, double threshold) {
  return kernels().count_greater(v.data(), v.size(), threshold);
}

inline std::size_t count_equal(std::span<const double> v, double value) {
  return kernels().count_equal(v.data(), v.size(), value);
}

}  // namespace sabl::simd
