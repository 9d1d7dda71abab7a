#include <cmath>
#include <limits>

#include "kernel_impl.hpp"

namespace xcmm {

KernelInputs KernelInputs::from(const SystemParams& p, const SteadyState& ss,
                                double xi, double phi) {
  KernelInputs in;
  in.kx = p.kappa_x;
  in.ky = p.kappa_y;
  in.km = p.kappa_m;
  in.gb = p.gamma_b;
  in.g1 = p.coupling_gamma_1;
  in.g2 = p.coupling_gamma_2;
  in.gabs2 = std::norm(ss.g_eff);
  in.xi_re = xi * std::cos(phi);
  in.xi_im = xi * std::sin(phi);
  return in;
}

void spectrum_kernel_scalar(const KernelInputs& in, const double* sigma,
                            std::size_t n, const SpectrumBlock& out) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto broadcast = [](double x) { return x; };
  auto select = [](bool m, double a, double b) { return m ? a : b; };
  auto le = [](double a, double b) { return a <= b; };
  for (std::size_t i = 0; i < n; ++i) {
    const auto o = detail::spectrum_element<double>(in, sigma[i], broadcast,
                                                    nan, 1.0, select, le);
    if (out.chi_r) out.chi_r[i] = o.chi_r;
    if (out.chi_i) out.chi_i[i] = o.chi_i;
    if (out.re_tp) out.re_tp[i] = o.re_tp;
    if (out.im_tp) out.im_tp[i] = o.im_tp;
    if (out.intensity) out.intensity[i] = o.intensity;
    if (out.tm_intensity) out.tm_intensity[i] = o.tm_intensity;
    if (out.tph_intensity) out.tph_intensity[i] = o.tph_intensity;
    if (out.tau_g) out.tau_g[i] = o.tau_g;
    if (out.singular) out.singular[i] = o.singular_mask != 0.0 ? 1 : 0;
  }
}

}  // namespace xcmm
