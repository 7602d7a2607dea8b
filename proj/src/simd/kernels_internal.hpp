#pragma once

#include "sabl/simd/kernels.hpp"

namespace sabl::simd::detail {

extern const KernelTable kScalarKernels;

#if defined(__x86_64__) || defined(_M_X64)
#define SABL_HAVE_AVX2_KERNELS 1
extern const KernelTable kAvx2Kernels;
#endif

#if defined(__aarch64__) && defined(__ARM_NEON)
#define SABL_HAVE_NEON_KERNELS 1
extern const KernelTable kNeonKernels;
#endif

}  // namespace sabl::simd::detail
