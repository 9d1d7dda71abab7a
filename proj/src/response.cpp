#include "xcmm/response.hpp"

#include <cmath>

namespace xcmm {

Complex lambda_factor(const SystemParams& p, const SteadyState& ss, double sigma) {
  const Complex a2 = alpha_factor(p.kappa_y, sigma);
  const Complex am = alpha_factor(p.kappa_m, sigma);
  const Complex ab = alpha_factor(p.gamma_b, sigma);
  const double g2sq = p.coupling_gamma_2 * p.coupling_gamma_2;
  return a2 * am * ab + g2sq * ab + std::norm(ss.g_eff) * a2;
}

ResponsePoint probe_response(const SystemParams& p, const SteadyState& ss,
                             const ProbeConfig& probe) {
  probe.validate();
  const double sigma = probe.sigma;
  const Complex a1 = alpha_factor(p.kappa_x, sigma);
  const Complex a2 = alpha_factor(p.kappa_y, sigma);
  const Complex ab = alpha_factor(p.gamma_b, sigma);
  const double g1 = p.coupling_gamma_1;
  const double g2 = p.coupling_gamma_2;

  const Complex lambda = lambda_factor(p, ss, sigma);
  const Complex denom = a1 * lambda + g1 * g1 * a2 * ab;

  // Nonzero for all real sigma when every rate is positive; guarded anyway.
  const double scale = std::pow(p.kappa_x + std::abs(sigma), 4);
  if (std::abs(denom) <= 1e-300 * std::max(scale, 1.0))
    throw DegenerateDenominatorError(std::abs(denom), sigma);

  const Complex xi_phase = probe.xi * std::polar(1.0, probe.phi);

  ResponsePoint r;
  r.sigma = sigma;
  r.c1_plus = (lambda - g1 * g2 * ab * xi_phase) / denom;
  r.eps_T = 2.0 * p.kappa_x * r.c1_plus;
  r.chi_r = r.eps_T.real();
  r.chi_i = r.eps_T.imag();
  return r;
}

}  // namespace xcmm
