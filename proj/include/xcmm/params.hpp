// params.hpp — physical parameters, unit conventions, derived drive quantities
//
// All internal frequencies and rates are angular (rad/s). Config documents
// carry ordinary Hz by default; the loader converts once (see config.hpp).

#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace xcmm {

using Complex = std::complex<double>;

inline constexpr double kHbar = 1.054571817e-34;  // J s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Validation failure; `key` is the offending parameter path, e.g. "damping.kappa_x".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class DetuningMode {
  ResolvedSidebandPinned,  // all drive detunings pinned to omega_b
  SelfConsistent,          // magnon detuning shifted by the phonon displacement
};

struct SystemParams {
  // Mode frequencies (rad/s)
  double omega_cavity_1 = 0.0;
  double omega_cavity_2 = 0.0;
  double omega_b = 0.0;

  // Damping rates (rad/s)
  double kappa_x = 0.0;
  double kappa_y = 0.0;
  double kappa_m = 0.0;
  double gamma_b = 0.0;

  // Couplings (rad/s)
  double coupling_gamma_1 = 0.0;  // magnon <-> cavity 1
  double coupling_gamma_2 = 0.0;  // magnon <-> cavity 2
  double g_mb = 0.0;              // bare magnomechanical coupling

  // Drive / material constants
  double gyromagnetic_ratio = 0.0;         // rad/s per tesla
  double drive_field = 0.0;                // tesla
  std::optional<double> bias_field;        // tesla; sets omega_m = gyro * H
  double spin_density = 0.0;               // m^-3
  double sphere_diameter = 0.0;            // m

  DetuningMode drive_detuning_mode = DetuningMode::ResolvedSidebandPinned;

  // When set, the effective magnomechanical coupling G_mb is pinned to this
  // value (rad/s) instead of being derived from the steady state.
  std::optional<Complex> g_mb_effective_override;

  /// Throws ValidationError naming the first violated field.
  void validate() const;
};

struct ProbeConfig {
  double phi = 0.0;    // relative phase (rad), interpreted mod 2*pi
  double xi = 0.0;     // amplitude ratio of the second probe, >= 0
  double sigma = 0.0;  // effective probe detuning sigma = delta - omega_b (rad/s)

  void validate() const;
};

/// Total spin number N = rho * (pi/6) * D^3.
double spin_count(const SystemParams& p);

/// Total spin S = (5/2) N.
double total_spin(const SystemParams& p);

/// Rabi frequency of the magnon drive, eps_m = (sqrt(5 N) / 4) * gamma_g * H_d.
double rabi_frequency(const SystemParams& p);

/// Probe amplitude eps = sqrt(2 kappa P / (hbar omega)), in sqrt(photons/s).
double probe_amplitude(double power_watts, double kappa, double omega);

/// The recommended-experiment defaults used throughout the figures.
SystemParams default_params();

}  // namespace xcmm
