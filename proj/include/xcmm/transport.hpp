// transport.hpp — transmission, its interference decomposition, and group delay

#pragma once

#include "xcmm/response.hpp"

namespace xcmm {

enum class DelayMethod { Analytic, FiniteDifference };

// Below this |T_p| the transmission phase is undefined and tau_g is not
// reported.
inline constexpr double kSingularThreshold = 1e-6;

struct TransportPoint {
  double sigma = 0.0;
  Complex t_p{};   // total transmission
  Complex t_m{};   // phase-independent component
  Complex t_ph{};  // phase-bearing interference component
  double intensity = 0.0;  // |t_p|^2
  double tau_g = 0.0;      // group delay (s); NaN when singular
  DelayMethod tau_method = DelayMethod::Analytic;
  bool has_delay = false;
  bool singular = false;
};

/// T_m = 1 - kappa_x Lambda / D, T_ph = -kappa_x Gamma_1 Gamma_2 alpha_b
/// xi e^{i phi} / D, T_p = T_m + T_ph. Delay left unfilled.
TransportPoint transmission(const SystemParams& params, const SteadyState& steady,
                            const ProbeConfig& probe);

/// Fills tau_g = Im[(dT_p/dsigma) / T_p], either from the closed-form
/// derivative of the rational function or by a central difference of the
/// unwrapped transmission phase with step 1e-6 * omega_b.
TransportPoint group_delay(const SystemParams& params, const SteadyState& steady,
                           const ProbeConfig& probe, DelayMethod method);

}  // namespace xcmm
