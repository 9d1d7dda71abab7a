// kernel_impl.hpp — shared element math for the spectrum kernels
//
// The whole per-sigma computation is written once, templated over the lane
// type (plain double or a 4-wide AVX2 pack). Both kernels therefore execute
// the same operation sequence lane by lane.

#pragma once

#include <cstdint>

#include "xcmm/kernels.hpp"
#include "xcmm/transport.hpp"

namespace xcmm::detail {

template <typename T>
struct Cx {
  T re, im;
};

template <typename T>
inline Cx<T> cadd(Cx<T> a, Cx<T> b) { return {a.re + b.re, a.im + b.im}; }
template <typename T>
inline Cx<T> csub(Cx<T> a, Cx<T> b) { return {a.re - b.re, a.im - b.im}; }
template <typename T>
inline Cx<T> cmul(Cx<T> a, Cx<T> b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <typename T>
inline Cx<T> cscale(T s, Cx<T> a) { return {s * a.re, s * a.im}; }
template <typename T>
inline T cnorm2(Cx<T> a) { return a.re * a.re + a.im * a.im; }
// Multiplication by -i.
template <typename T>
inline Cx<T> cmuli_neg(Cx<T> a) { return {a.im, T(0) - a.re}; }
template <typename T>
inline Cx<T> cdiv(Cx<T> a, Cx<T> b) {
  const T inv = T(1) / cnorm2(b);
  return {(a.re * b.re + a.im * b.im) * inv, (a.im * b.re - a.re * b.im) * inv};
}

template <typename T>
struct SpectrumOut {
  T chi_r, chi_i, re_tp, im_tp, intensity, tm_intensity, tph_intensity, tau_g;
  T singular_mask;  // 0 or all-ones-as-double truthy per lane
};

// in: broadcast helpers are supplied by the caller through B(double) -> T.
template <typename T, typename Broadcast>
inline SpectrumOut<T> spectrum_element(const KernelInputs& in, T sigma, Broadcast B,
                                       T nan_value, T ones_mask,
                                       auto select /* (mask, a, b) */,
                                       auto less_equal /* (a, b) -> mask */) {
  const T kx = B(in.kx);
  const T zero = B(0.0);
  const T one = B(1.0);
  const T g1sq = B(in.g1 * in.g1);
  const T g2sq = B(in.g2 * in.g2);
  const T g1g2 = B(in.g1 * in.g2);
  const T gabs2 = B(in.gabs2);
  const Cx<T> xiph{B(in.xi_re), B(in.xi_im)};

  const T neg_sigma = zero - sigma;
  const Cx<T> a1{kx, neg_sigma};
  const Cx<T> a2{B(in.ky), neg_sigma};
  const Cx<T> am{B(in.km), neg_sigma};
  const Cx<T> ab{B(in.gb), neg_sigma};

  const Cx<T> a2am = cmul(a2, am);
  const Cx<T> a2ab = cmul(a2, ab);
  const Cx<T> amab = cmul(am, ab);

  const Cx<T> lambda = cadd(cadd(cmul(a2am, ab), cscale(g2sq, ab)), cscale(gabs2, a2));
  const Cx<T> denom = cadd(cmul(a1, lambda), cscale(g1sq, a2ab));
  const Cx<T> inv_d = cdiv(Cx<T>{one, zero}, denom);

  // Response quadratures
  const Cx<T> num = csub(lambda, cmul(cscale(g1g2, ab), xiph));
  const Cx<T> c1p = cmul(num, inv_d);
  const T two_kx = kx + kx;

  // Transmission decomposition
  const Cx<T> tm = csub(Cx<T>{one, zero}, cscale(kx, cmul(lambda, inv_d)));
  const Cx<T> tph =
      cscale(zero - kx, cmul(cmul(cscale(g1g2, ab), xiph), inv_d));
  const Cx<T> tp = cadd(tm, tph);
  const T tp_norm2 = cnorm2(tp);

  // Closed-form derivative w.r.t. sigma (every alpha' = -i)
  const Cx<T> lambda_p =
      csub(cmuli_neg(cadd(cadd(a2am, a2ab), amab)), Cx<T>{zero, g2sq + gabs2});
  const Cx<T> denom_p = cadd(cmuli_neg(lambda),
                             cadd(cmul(a1, lambda_p), cmuli_neg(cscale(g1sq, cadd(a2, ab)))));
  const Cx<T> inv_d2 = cmul(inv_d, inv_d);
  const Cx<T> tm_p = cscale(zero - kx,
                            cmul(csub(cmul(lambda_p, denom), cmul(lambda, denom_p)), inv_d2));
  const Cx<T> tph_p =
      cscale(zero - kx,
             cmul(cmul(xiph, cscale(g1g2, csub(cmuli_neg(denom), cmul(ab, denom_p)))), inv_d2));
  const Cx<T> tp_p = cadd(tm_p, tph_p);
  const T tau = cdiv(tp_p, tp).im;

  const T thr2 = B(kSingularThreshold * kSingularThreshold);
  const T sing = less_equal(tp_norm2, thr2);

  SpectrumOut<T> o;
  o.chi_r = two_kx * c1p.re;
  o.chi_i = two_kx * c1p.im;
  o.re_tp = tp.re;
  o.im_tp = tp.im;
  o.intensity = tp_norm2;
  o.tm_intensity = cnorm2(tm);
  o.tph_intensity = cnorm2(tph);
  o.tau_g = select(sing, nan_value, tau);
  o.singular_mask = select(sing, ones_mask, zero);
  return o;
}

}  // namespace xcmm::detail
