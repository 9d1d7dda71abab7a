#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "kernel_impl.hpp"

namespace xcmm {

namespace {

struct Pack4 {
  __m256d v;
  Pack4() = default;
  Pack4(__m256d x) : v(x) {}
  explicit Pack4(double x) : v(_mm256_set1_pd(x)) {}
  friend Pack4 operator+(Pack4 a, Pack4 b) { return _mm256_add_pd(a.v, b.v); }
  friend Pack4 operator-(Pack4 a, Pack4 b) { return _mm256_sub_pd(a.v, b.v); }
  friend Pack4 operator*(Pack4 a, Pack4 b) { return _mm256_mul_pd(a.v, b.v); }
  friend Pack4 operator/(Pack4 a, Pack4 b) { return _mm256_div_pd(a.v, b.v); }
};

inline Pack4 select4(Pack4 mask, Pack4 a, Pack4 b) {
  return _mm256_blendv_pd(b.v, a.v, mask.v);
}
inline Pack4 le4(Pack4 a, Pack4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_LE_OQ); }

inline void store_lane(double* dst, std::size_t i, Pack4 x) {
  if (dst) _mm256_storeu_pd(dst + i, x.v);
}

}  // namespace

void spectrum_kernel_avx2(const KernelInputs& in, const double* sigma,
                          std::size_t n, const SpectrumBlock& out) {
  auto broadcast = [](double x) { return Pack4(x); };
  const Pack4 nan(std::numeric_limits<double>::quiet_NaN());
  const Pack4 ones(_mm256_castsi256_pd(_mm256_set1_epi64x(-1)));

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const Pack4 s(_mm256_loadu_pd(sigma + i));
    const auto o = detail::spectrum_element<Pack4>(in, s, broadcast, nan, ones,
                                                   select4, le4);
    store_lane(out.chi_r, i, o.chi_r);
    store_lane(out.chi_i, i, o.chi_i);
    store_lane(out.re_tp, i, o.re_tp);
    store_lane(out.im_tp, i, o.im_tp);
    store_lane(out.intensity, i, o.intensity);
    store_lane(out.tm_intensity, i, o.tm_intensity);
    store_lane(out.tph_intensity, i, o.tph_intensity);
    store_lane(out.tau_g, i, o.tau_g);
    if (out.singular) {
      alignas(32) double m[4];
      _mm256_store_pd(m, o.singular_mask.v);
      for (int k = 0; k < 4; ++k) out.singular[i + k] = m[k] != 0.0 ? 1 : 0;
    }
  }

  // Tail lanes fall back to the scalar path.
  if (i < n) {
    SpectrumBlock tail = out;
    auto shift = [i](double* p) { return p ? p + i : nullptr; };
    tail.chi_r = shift(out.chi_r);
    tail.chi_i = shift(out.chi_i);
    tail.re_tp = shift(out.re_tp);
    tail.im_tp = shift(out.im_tp);
    tail.intensity = shift(out.intensity);
    tail.tm_intensity = shift(out.tm_intensity);
    tail.tph_intensity = shift(out.tph_intensity);
    tail.tau_g = shift(out.tau_g);
    tail.singular = out.singular ? out.singular + i : nullptr;
    spectrum_kernel_scalar(in, sigma + i, n - i, tail);
  }
}

}  // namespace xcmm

#endif  // x86_64
