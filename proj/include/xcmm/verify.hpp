// verify.hpp — the oracle triangle over randomized parameter draws

#pragma once

#include <cstdint>
#include <random>

#include "xcmm/params.hpp"

namespace xcmm {

struct OracleDraw {
  SystemParams params;
  ProbeConfig probe;
};

/// Rates and couplings log-uniform within one decade of the experiment
/// defaults, |G_mb| pinned log-uniform around 0.32 omega_b, xi in [0, 2],
/// phi in [0, 2 pi), sigma in [-omega_b, omega_b].
OracleDraw random_draw(std::mt19937_64& rng);

struct VerifyReport {
  int draws = 0;
  std::uint64_t seed = 0;
  double max_rel_closed_vs_linear = 0.0;  // closed form vs 4x4 solve
  double max_linear_residual = 0.0;       // ||Ax-b||/||b||
  int time_domain_draws = 0;
  double max_rel_time_vs_linear = 0.0;    // RK4 demodulation vs 4x4 solve
  bool pass = false;

  static constexpr double kTolClosedLinear = 1e-9;
  static constexpr double kTolResidual = 1e-12;
  static constexpr double kTolTimeLinear = 1e-6;
};

/// Runs closed-form vs linear-solve on every draw and the time-domain leg on
/// `time_domain_draws` of them (rates clamped to >= 1e-2 omega_b for that leg
/// so transients decay quickly; the comparison is at the clamped parameters).
VerifyReport run_verification(int draws, std::uint64_t seed, int time_domain_draws);

}  // namespace xcmm
