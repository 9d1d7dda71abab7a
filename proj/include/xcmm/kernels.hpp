// kernels.hpp — batch spectrum evaluation over a detuning grid
//
// The probe response, transmission and analytic group delay are rational
// functions of sigma with fixed coefficients, so a sigma sweep is a pure
// data-parallel loop. A scalar reference kernel and an AVX2 variant produce
// the same outputs; the active one is picked at runtime (override with
// XCMM_ISA=scalar|avx2).

#pragma once

#include <cstddef>
#include <cstdint>

#include "xcmm/params.hpp"
#include "xcmm/steady.hpp"

namespace xcmm {

struct KernelInputs {
  double kx, ky, km, gb;  // damping rates (rad/s)
  double g1, g2;          // magnon-photon couplings (rad/s)
  double gabs2;           // |G_mb|^2
  double xi_re, xi_im;    // xi * e^{i phi}

  static KernelInputs from(const SystemParams& p, const SteadyState& ss,
                           double xi, double phi);
};

// Caller-allocated output arrays, each of length n. Null pointers are skipped.
struct SpectrumBlock {
  double* chi_r = nullptr;          // Re(eps_T)
  double* chi_i = nullptr;          // Im(eps_T)
  double* re_tp = nullptr;
  double* im_tp = nullptr;
  double* intensity = nullptr;      // |T_p|^2
  double* tm_intensity = nullptr;   // |T_m|^2
  double* tph_intensity = nullptr;  // |T_ph|^2
  double* tau_g = nullptr;          // analytic group delay (s); NaN when singular
  std::uint8_t* singular = nullptr;
};

using SpectrumKernelFn = void (*)(const KernelInputs&, const double* sigma,
                                  std::size_t n, const SpectrumBlock&);

void spectrum_kernel_scalar(const KernelInputs& in, const double* sigma,
                            std::size_t n, const SpectrumBlock& out);

#if defined(__x86_64__) || defined(_M_X64)
void spectrum_kernel_avx2(const KernelInputs& in, const double* sigma,
                          std::size_t n, const SpectrumBlock& out);
#endif

/// Best kernel for this machine, honoring the XCMM_ISA override.
SpectrumKernelFn active_spectrum_kernel();

/// Name of the kernel active_spectrum_kernel() returns ("scalar" or "avx2").
const char* active_isa_name();

}  // namespace xcmm
