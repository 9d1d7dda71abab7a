// sweep.hpp — grid evaluation over sigma / phi / xi with extremum location

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "xcmm/transport.hpp"

namespace xcmm {

enum class Axis { Sigma, Phi, Xi };

enum class Observable {
  Absorption,    // Re(eps_T)
  Dispersion,    // Im(eps_T)
  Intensity,     // |T_p|^2
  TmIntensity,   // |T_m|^2
  TphIntensity,  // |T_ph|^2
  GroupDelay,    // analytic tau_g (s)
};

struct AxisSpec {
  Axis name = Axis::Sigma;
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;

  void validate() const;  // count >= 2, start < stop
  double coordinate(std::size_t index) const;
};

struct SweepSpec {
  AxisSpec axis1;
  std::optional<AxisSpec> axis2;  // contours; axis names must differ
  Observable observable = Observable::Absorption;
  ProbeConfig fixed;  // values for the probe parameters not swept

  void validate() const;
};

struct Extremum {
  double coord1 = 0.0;
  double coord2 = 0.0;  // meaningful only for 2-D sweeps (unrefined)
  double value = 0.0;
  bool is_minimum = false;
};

struct SweepResult {
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;          // empty for 1-D
  std::vector<double> values;                // row-major [axis1][axis2]
  std::vector<std::uint8_t> ok;              // per-node flag; 0 marks error nodes
  std::vector<Extremum> extrema;             // interior extrema (1-D only)
  std::vector<double> zero_crossings;        // sign-change coordinates (1-D only)
};

/// Evaluates the observable at every grid node. The steady state is resolved
/// once by the caller and reused (sigma, phi, xi do not alter it). Node
/// failures (e.g. singular group delay) mark the node instead of aborting.
/// Worker count comes from the XCMM_WORKERS environment variable (default 1);
/// output is identical for any worker count.
SweepResult run_sweep(const SystemParams& params, const SteadyState& steady,
                      const SweepSpec& spec);

/// Closed-form observable at a single point.
double evaluate_observable(const SystemParams& params, const SteadyState& steady,
                           Observable obs, const ProbeConfig& probe);

/// Interior extrema from first-difference sign changes; with refine=true each
/// is polished by golden-section search on the continuous observable to a
/// coordinate tolerance of 1e-6 * omega_b (sigma axis) or 1e-9 * span.
std::vector<Extremum> locate_extrema(const SystemParams& params,
                                     const SteadyState& steady,
                                     const SweepSpec& spec,
                                     const SweepResult& result, bool refine);

}  // namespace xcmm
