#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"

namespace sabl::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

bool is_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2:
#if defined(SABL_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(SABL_HAVE_NEON_KERNELS)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  switch (isa) {
#if defined(SABL_HAVE_AVX2_KERNELS)
    case Isa::kAvx2:
      if (is_supported(isa)) return detail::kAvx2Kernels;
      break;
#endif
#if defined(SABL_HAVE_NEON_KERNELS)
    case Isa::kNeon: return detail::kNeonKernels;
#endif
    default: break;
  }
  return detail::kScalarKernels;
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out{Isa::kScalar};
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (is_supported(isa)) out.push_back(isa);
  }
  return out;
}

namespace {

const KernelTable& select_kernels() {
  if (const char* forced = std::getenv("SABL_SIMD")) {
    const std::string name{forced};
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (name == isa_name(isa)) return is_supported(isa) ? kernels_for(isa) : detail::kScalarKernels;
    }
  }
  if (is_supported(Isa::kAvx2)) return kernels_for(Isa::kAvx2);
  if (is_supported(Isa::kNeon)) return kernels_for(Isa::kNeon);
  return detail::kScalarKernels;
}

}  // namespace

const KernelTable& kernels() {
  static const KernelTable& active = select_kernels();
  return active;
}

}  // namespace sabl::simd
