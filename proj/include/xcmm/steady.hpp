// steady.hpp — classical steady state of the driven magnomechanical system

#pragma once

#include "xcmm/params.hpp"

namespace xcmm {

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(double residual, int iterations)
      : std::runtime_error("fixed-point iteration for delta_m did not converge; "
                           "last residual " + std::to_string(residual) +
                           " rad/s after " + std::to_string(iterations) + " iterations"),
        residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Raised when a derived coupling is requested but the config pins it.
class OverrideConflictError : public std::runtime_error {
 public:
  OverrideConflictError()
      : std::runtime_error("g_mb_effective_override is set; the derived coupling "
                           "g_mb * m_s is unavailable") {}
};

struct SteadyState {
  Complex m_s{};   // magnon amplitude
  Complex b_s{};   // phonon amplitude
  Complex c1_s{};  // cavity 1 amplitude
  Complex c2_s{};  // cavity 2 amplitude
  double delta_m = 0.0;     // shifted magnon detuning (rad/s)
  Complex g_eff{};          // effective coupling G_mb actually used downstream
  bool g_eff_overridden = false;
  int iterations = 0;       // fixed-point steps (0 when pinned)
  bool converged = true;
};

/// Solves the classical steady state.
///
/// Pinned mode evaluates the closed form at delta_x = delta_y = delta_m =
/// omega_b. Self-consistent mode iterates delta_m = omega_b + g_mb (b_s +
/// b_s*) with update damping 0.5, to |d delta_m| <= 1e-9 * omega_b, at most
/// 1e4 steps; throws NonConvergenceError otherwise.
SteadyState solve_steady_state(const SystemParams& params);

/// The coupling derived from the steady state, g_mb * m_s.
/// Throws OverrideConflictError when the params pin the coupling instead.
Complex derived_coupling(const SystemParams& params, const SteadyState& ss);

}  // namespace xcmm
