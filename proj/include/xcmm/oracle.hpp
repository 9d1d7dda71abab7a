// oracle.hpp — independent verification paths for the closed-form response
//
// (a) a generic dense 4x4 complex linear solve of the sideband system, with
//     no reuse of the closed-form algebra, and
// (b) fixed-step RK4 time-domain integration with demodulation against the
//     probe tone, for both the linearized and the full nonlinear equations.

#pragma once

#include <array>

#include "xcmm/params.hpp"
#include "xcmm/steady.hpp"

namespace xcmm {

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(double condition_estimate)
      : std::runtime_error("sideband matrix numerically singular; condition estimate " +
                           std::to_string(condition_estimate)),
        condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown ordering: (c1+, c2+, m+, b+); drive in units of eps_p.
struct SidebandSystem {
  std::array<std::array<Complex, 4>, 4> matrix{};
  std::array<Complex, 4> drive{};
};

SidebandSystem build_sideband_system(const SystemParams& params,
                                     const SteadyState& steady,
                                     const ProbeConfig& probe);

struct SidebandSolution {
  Complex c1_plus, c2_plus, m_plus, b_plus;
  double residual = 0.0;  // ||A x - b|| / ||b||
};

/// Gaussian elimination with partial pivoting on the 4x4 system.
SidebandSolution solve_sidebands(const SystemParams& params,
                                 const SteadyState& steady,
                                 const ProbeConfig& probe);

/// Integrates the four linearized ODEs driven at e^{-i sigma t}, drops the
/// first 80% of `duration` as transient, and demodulates c1 against the
/// drive tone over the final window (an integer number of periods when
/// sigma != 0). Returns the demodulated c1+.
///
/// Preconditions (IntegrationError otherwise):
///   duration >= 10 / min(kappa_x, kappa_y, kappa_m, gamma_b)
///   step     <= 1e-2 / max(rates, couplings, |sigma|)
/// A final-window amplitude drift above 1e-6 relative also raises
/// IntegrationError (transient not decayed).
Complex integrate_time_domain(const SystemParams& params, const SteadyState& steady,
                              const ProbeConfig& probe, double duration, double step,
                              double drive_scale = 1.0);

/// Integrates the full nonlinear drive-frame equations with probes off,
/// starting from the closed-form steady state (the Kerr response is bistable
/// at strong drive, so a from-rest run can settle on the other branch), and
/// returns the long-time averages as a SteadyState estimate (g_eff = g_mb *
/// mean magnon amplitude; delta_m = effective shifted detuning at the mean).
/// A drift away from the start point shows up directly in the averages.
SteadyState integrate_full_nonlinear(const SystemParams& params, double duration,
                                     double step);

/// Validated step/duration suggestions for the two integrators.
double oracle_min_duration(const SystemParams& params);
double oracle_max_step(const SystemParams& params, double sigma);

}  // namespace xcmm
