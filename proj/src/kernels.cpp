#include <cstdlib>
#include <cstring>

#include "xcmm/kernels.hpp"

namespace xcmm {

namespace {

enum class Isa { Scalar, Avx2 };

Isa pick_isa() {
  if (const char* env = std::getenv("XCMM_ISA")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
#if defined(__x86_64__) || defined(_M_X64)
    if (std::strcmp(env, "avx2") == 0 && __builtin_cpu_supports("avx2"))
      return Isa::Avx2;
#endif
    return Isa::Scalar;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

}  // namespace

SpectrumKernelFn active_spectrum_kernel() {
#if defined(__x86_64__) || defined(_M_X64)
  if (pick_isa() == Isa::Avx2) return spectrum_kernel_avx2;
#endif
  return spectrum_kernel_scalar;
}

const char* active_isa_name() {
  return pick_isa() == Isa::Avx2 ? "avx2" : "scalar";
}

}  // namespace xcmm
