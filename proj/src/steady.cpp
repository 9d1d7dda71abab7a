#include "xcmm/steady.hpp"

#include <cmath>

namespace xcmm {

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kUpdateDamping = 0.5;

// One evaluation of Eq.-(4)-style amplitudes at a given magnon detuning.
struct Amplitudes {
  Complex m_s, b_s, c1_s, c2_s;
};

Amplitudes evaluate(const SystemParams& p, double eps_m, double delta_m) {
  const Complex i{0.0, 1.0};
  const double delta_x = p.omega_b;
  const double delta_y = p.omega_b;
  const Complex zeta_x = p.kappa_x + i * delta_x;
  const Complex zeta_y = p.kappa_y + i * delta_y;
  const Complex zeta_m = p.kappa_m + i * delta_m;
  const double g1 = p.coupling_gamma_1;
  const double g2 = p.coupling_gamma_2;

  Amplitudes a;
  a.m_s = eps_m * zeta_x * zeta_y /
          (zeta_x * zeta_y * zeta_m + g1 * g1 * zeta_y + g2 * g2 * zeta_x);
  a.b_s = -i * p.g_mb * std::norm(a.m_s) / (i * p.omega_b + p.gamma_b);
  a.c1_s = -i * g1 * a.m_s / zeta_x;
  a.c2_s = -i * g2 * a.m_s / zeta_y;
  return a;
}

}  // namespace

SteadyState solve_steady_state(const SystemParams& params) {
  params.validate();
  const double eps_m = rabi_frequency(params);

  SteadyState ss;
  ss.delta_m = params.omega_b;

  if (params.drive_detuning_mode == DetuningMode::SelfConsistent) {
    const double tol = 1e-9 * params.omega_b;
    double delta_m = params.omega_b;  // bare detuning, also the starting point
    double residual = 0.0;
    int it = 0;
    for (; it < kMaxIterations; ++it) {
      const Amplitudes a = evaluate(params, eps_m, delta_m);
      const double target = params.omega_b + params.g_mb * 2.0 * a.b_s.real();
      residual = target - delta_m;
      if (std::abs(residual) <= tol) break;
      delta_m += kUpdateDamping * residual;
    }
    if (std::abs(residual) > tol) throw NonConvergenceError(residual, it);
    ss.delta_m = delta_m;
    ss.iterations = it;
  }

  const Amplitudes a = evaluate(params, eps_m, ss.delta_m);
  ss.m_s = a.m_s;
  ss.b_s = a.b_s;
  ss.c1_s = a.c1_s;
  ss.c2_s = a.c2_s;
  if (params.g_mb_effective_override) {
    ss.g_eff = *params.g_mb_effective_override;
    ss.g_eff_overridden = true;
  } else {
    ss.g_eff = params.g_mb * ss.m_s;
  }
  return ss;
}

Complex derived_coupling(const SystemParams& params, const SteadyState& ss) {
  if (params.g_mb_effective_override) throw OverrideConflictError();
  return params.g_mb * ss.m_s;
}

}  // namespace xcmm
