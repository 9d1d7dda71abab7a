#include "xcmm/params.hpp"

#include <cmath>

namespace xcmm {

namespace {

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ValidationError(key, what);
}

}  // namespace

void SystemParams::validate() const {
  require(std::isfinite(omega_b) && omega_b > 0, "modes.omega_b", "must be > 0");
  require(omega_cavity_1 >= 0, "modes.omega_cavity_1", "must be >= 0");
  require(omega_cavity_2 >= 0, "modes.omega_cavity_2", "must be >= 0");
  require(kappa_x > 0, "damping.kappa_x", "must be > 0");
  require(kappa_y > 0, "damping.kappa_y", "must be > 0");
  require(kappa_m > 0, "damping.kappa_m", "must be > 0");
  require(gamma_b > 0, "damping.gamma_b", "must be > 0");
  require(coupling_gamma_1 >= 0, "couplings.coupling_gamma_1", "must be >= 0");
  require(coupling_gamma_2 >= 0, "couplings.coupling_gamma_2", "must be >= 0");
  require(g_mb >= 0, "couplings.g_mb", "must be >= 0");
  require(gyromagnetic_ratio >= 0, "drive.gyromagnetic_ratio", "must be >= 0");
  require(drive_field >= 0, "drive.drive_field", "must be >= 0");
  require(spin_density > 0, "material.spin_density", "must be > 0");
  require(sphere_diameter > 0, "material.sphere_diameter", "must be > 0");
  if (bias_field) require(*bias_field >= 0, "modes.bias_field", "must be >= 0");
  if (drive_detuning_mode == DetuningMode::ResolvedSidebandPinned) {
    // Resolved-sideband check: the pin is only meaningful when omega_b
    // dominates every cavity/magnon linewidth.
    const double kmax = std::max(kappa_m, std::max(kappa_x, kappa_y));
    require(omega_b > kmax, "modes.omega_b",
            "resolved-sideband pin requires omega_b > max(kappa_m, kappa_x, kappa_y)");
  }
}

void ProbeConfig::validate() const {
  require(xi >= 0, "probe.xi", "must be >= 0");
  require(std::isfinite(xi), "probe.xi", "must be finite");
  require(std::isfinite(phi), "probe.phi", "must be finite");
  require(std::isfinite(sigma), "probe.sigma", "must be finite");
}

double spin_count(const SystemParams& p) {
  if (p.sphere_diameter <= 0)
    throw ValidationError("material.sphere_diameter", "must be > 0");
  if (p.spin_density <= 0)
    throw ValidationError("material.spin_density", "must be > 0");
  const double d3 = p.sphere_diameter * p.sphere_diameter * p.sphere_diameter;
  return p.spin_density * (std::numbers::pi / 6.0) * d3;
}

double total_spin(const SystemParams& p) { return 2.5 * spin_count(p); }

double rabi_frequency(const SystemParams& p) {
  const double n = spin_count(p);
  return 0.25 * std::sqrt(5.0 * n) * p.gyromagnetic_ratio * p.drive_field;
}

double probe_amplitude(double power_watts, double kappa, double omega) {
  if (power_watts < 0)
    throw ValidationError("probe.power", "must be >= 0");
  return std::sqrt(2.0 * kappa * power_watts / (kHbar * omega));
}

SystemParams default_params() {
  SystemParams p;
  p.omega_cavity_1 = kTwoPi * 10.0e9;
  p.omega_cavity_2 = kTwoPi * 10.0e9;
  p.omega_b = kTwoPi * 15.0e6;
  p.kappa_x = kTwoPi * 2.1e6;
  p.kappa_y = kTwoPi * 0.15e6;
  p.kappa_m = kTwoPi * 0.1e6;
  p.gamma_b = 1e-5 * p.omega_b;
  p.coupling_gamma_1 = kTwoPi * 3.2e6;
  p.coupling_gamma_2 = kTwoPi * 3.2e6;
  p.g_mb = kTwoPi * 0.3;
  p.gyromagnetic_ratio = kTwoPi * 28.0e9;  // per tesla
  p.drive_field = 1.3e-4;
  p.spin_density = 4.22e27;
  p.sphere_diameter = 250e-6;
  return p;
}

}  // namespace xcmm
