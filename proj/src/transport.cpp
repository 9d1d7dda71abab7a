#include "xcmm/transport.hpp"

#include <cmath>
#include <limits>

namespace xcmm {

namespace {

struct Pieces {
  Complex lambda, denom, ab, xi_phase;
  double g1, g2, kx;
};

Pieces assemble(const SystemParams& p, const SteadyState& ss, const ProbeConfig& probe) {
  Pieces w;
  w.g1 = p.coupling_gamma_1;
  w.g2 = p.coupling_gamma_2;
  w.kx = p.kappa_x;
  w.ab = alpha_factor(p.gamma_b, probe.sigma);
  w.xi_phase = probe.xi * std::polar(1.0, probe.phi);
  w.lambda = lambda_factor(p, ss, probe.sigma);
  const Complex a1 = alpha_factor(p.kappa_x, probe.sigma);
  const Complex a2 = alpha_factor(p.kappa_y, probe.sigma);
  w.denom = a1 * w.lambda + w.g1 * w.g1 * a2 * w.ab;
  const double scale = std::pow(p.kappa_x + std::abs(probe.sigma), 4);
  if (std::abs(w.denom) <= 1e-300 * std::max(scale, 1.0))
    throw DegenerateDenominatorError(std::abs(w.denom), probe.sigma);
  return w;
}

}  // namespace

TransportPoint transmission(const SystemParams& p, const SteadyState& ss,
                            const ProbeConfig& probe) {
  probe.validate();
  const Pieces w = assemble(p, ss, probe);

  TransportPoint t;
  t.sigma = probe.sigma;
  t.t_m = 1.0 - w.kx * w.lambda / w.denom;
  t.t_ph = -w.kx * w.g1 * w.g2 * w.ab * w.xi_phase / w.denom;
  t.t_p = t.t_m + t.t_ph;
  t.intensity = std::norm(t.t_p);
  t.singular = std::abs(t.t_p) <= kSingularThreshold;
  t.tau_g = std::numeric_limits<double>::quiet_NaN();
  return t;
}

TransportPoint group_delay(const SystemParams& p, const SteadyState& ss,
                           const ProbeConfig& probe, DelayMethod method) {
  TransportPoint t = transmission(p, ss, probe);
  t.tau_method = method;
  if (t.singular) return t;  // phase undefined at a transmission zero

  if (method == DelayMethod::Analytic) {
    const Pieces w = assemble(p, ss, probe);
    const double sigma = probe.sigma;
    const Complex i{0.0, 1.0};
    const Complex a1 = alpha_factor(p.kappa_x, sigma);
    const Complex a2 = alpha_factor(p.kappa_y, sigma);
    const Complex am = alpha_factor(p.kappa_m, sigma);
    const double g2sq = w.g2 * w.g2;
    const double gabs2 = std::norm(ss.g_eff);

    // d alpha_z / d sigma = -i for every z; quotient rule on both components.
    const Complex lambda_p =
        -i * (a2 * am + a2 * w.ab + am * w.ab) - i * (g2sq + gabs2);
    const Complex denom_p =
        -i * w.lambda + a1 * lambda_p - i * w.g1 * w.g1 * (a2 + w.ab);
    const Complex d2 = w.denom * w.denom;
    const Complex tm_p = -w.kx * (lambda_p * w.denom - w.lambda * denom_p) / d2;
    const Complex tph_p = -w.kx * w.g1 * w.g2 * w.xi_phase *
                          (-i * w.denom - w.ab * denom_p) / d2;
    t.tau_g = ((tm_p + tph_p) / t.t_p).imag();
  } else {
    const double h = 1e-6 * p.omega_b;
    ProbeConfig lo = probe, hi = probe;
    lo.sigma = probe.sigma - h;
    hi.sigma = probe.sigma + h;
    const Complex t_lo = transmission(p, ss, lo).t_p;
    const Complex t_hi = transmission(p, ss, hi).t_p;
    // Nearest-branch phase difference: arg(t_hi / t_lo) lands in (-pi, pi],
    // which is the unwrapped increment as long as the true jump stays below pi.
    const double dpsi = std::arg(t_hi * std::conj(t_lo));
    t.tau_g = dpsi / (2.0 * h);
  }
  t.has_delay = true;
  return t;
}

}  // namespace xcmm
