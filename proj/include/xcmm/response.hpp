// response.hpp — analytic probe-frequency response of cavity 1

#pragma once

#include "xcmm/params.hpp"
#include "xcmm/steady.hpp"

namespace xcmm {

class DegenerateDenominatorError : public std::runtime_error {
 public:
  DegenerateDenominatorError(double magnitude, double sigma)
      : std::runtime_error("degenerate response denominator |D| = " +
                           std::to_string(magnitude) + " at sigma = " +
                           std::to_string(sigma) + " rad/s"),
        magnitude_(magnitude), sigma_(sigma) {}
  double magnitude() const { return magnitude_; }
  double sigma() const { return sigma_; }

 private:
  double magnitude_;
  double sigma_;
};

struct ResponsePoint {
  double sigma = 0.0;   // rad/s
  Complex c1_plus{};    // units 1/(rad/s)
  Complex eps_T{};      // dimensionless output amplitude, 2 kappa_x c1_plus
  double chi_r = 0.0;   // absorption quadrature, Re(eps_T)
  double chi_i = 0.0;   // dispersion quadrature, Im(eps_T)
};

/// alpha_z = kappa_z - i sigma.
inline Complex alpha_factor(double rate, double sigma) {
  return {rate, -sigma};
}

/// Lambda = alpha_2 alpha_m alpha_b + Gamma_2^2 alpha_b + |G_mb|^2 alpha_2.
Complex lambda_factor(const SystemParams& params, const SteadyState& steady,
                      double sigma);

/// c1+ = (Lambda - Gamma_1 Gamma_2 alpha_b xi e^{i phi}) /
///       (alpha_1 Lambda + Gamma_1^2 alpha_2 alpha_b), eps_T = 2 kappa_x c1+.
ResponsePoint probe_response(const SystemParams& params, const SteadyState& steady,
                             const ProbeConfig& probe);

}  // namespace xcmm
