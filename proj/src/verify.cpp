#include "xcmm/verify.hpp"

#include <algorithm>
#include <cmath>

#include "xcmm/oracle.hpp"
#include "xcmm/response.hpp"

namespace xcmm {

namespace {

double log_uniform_about(std::mt19937_64& rng, double center) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);  // +/- one decade
  return center * std::pow(10.0, u(rng));
}

// Draws must stay in the resolved-sideband regime (rates below omega_b).
double draw_rate(std::mt19937_64& rng, double center, double omega_b) {
  return std::min(log_uniform_about(rng, center), 0.5 * omega_b);
}

}  // namespace

OracleDraw random_draw(std::mt19937_64& rng) {
  OracleDraw d;
  d.params = default_params();
  const double wb = d.params.omega_b;
  d.params.kappa_x = draw_rate(rng, d.params.kappa_x, wb);
  d.params.kappa_y = draw_rate(rng, d.params.kappa_y, wb);
  d.params.kappa_m = draw_rate(rng, d.params.kappa_m, wb);
  d.params.gamma_b = draw_rate(rng, d.params.gamma_b, wb);
  d.params.coupling_gamma_1 = log_uniform_about(rng, d.params.coupling_gamma_1);
  d.params.coupling_gamma_2 = log_uniform_about(rng, d.params.coupling_gamma_2);
  std::uniform_real_distribution<double> uphase(0.0, kTwoPi);
  d.params.g_mb_effective_override =
      std::polar(log_uniform_about(rng, 0.32 * wb), uphase(rng));
  std::uniform_real_distribution<double> uxi(0.0, 2.0);
  std::uniform_real_distribution<double> usigma(-wb, wb);
  d.probe.xi = uxi(rng);
  d.probe.phi = uphase(rng);
  d.probe.sigma = usigma(rng);
  return d;
}

VerifyReport run_verification(int draws, std::uint64_t seed, int time_domain_draws) {
  VerifyReport rep;
  rep.draws = draws;
  rep.seed = seed;

  std::mt19937_64 rng(seed);
  const int td_stride = time_domain_draws > 0
                            ? std::max(1, draws / time_domain_draws)
                            : draws + 1;

  for (int i = 0; i < draws; ++i) {
    const OracleDraw d = random_draw(rng);
    const SteadyState ss = solve_steady_state(d.params);
    const ResponsePoint closed = probe_response(d.params, ss, d.probe);
    const SidebandSolution lin = solve_sidebands(d.params, ss, d.probe);

    const double rel =
        std::abs(closed.c1_plus - lin.c1_plus) / std::abs(lin.c1_plus);
    rep.max_rel_closed_vs_linear = std::max(rep.max_rel_closed_vs_linear, rel);
    rep.max_linear_residual = std::max(rep.max_linear_residual, lin.residual);

    if (i % td_stride == 0 && rep.time_domain_draws < time_domain_draws) {
      // Time-domain leg at clamped rates (fast transients); same clamped
      // parameters go into the linear solve it is compared against.
      SystemParams p = d.params;
      const double wb = p.omega_b;
      const double floor_rate = 1e-2 * wb;
      p.kappa_x = std::max(p.kappa_x, floor_rate);
      p.kappa_y = std::max(p.kappa_y, floor_rate);
      p.kappa_m = std::max(p.kappa_m, floor_rate);
      p.gamma_b = std::max(p.gamma_b, floor_rate);
      const SteadyState ss_td = solve_steady_state(p);

      const double fastest =
          std::max({p.kappa_x, p.kappa_y, p.kappa_m, p.gamma_b,
                    p.coupling_gamma_1, p.coupling_gamma_2,
                    std::abs(ss_td.g_eff), std::abs(d.probe.sigma)});
      const double slowest = std::min({p.kappa_x, p.kappa_y, p.kappa_m, p.gamma_b});
      const double duration = 24.0 / slowest;
      const double step = 1e-2 / fastest;

      const Complex td = integrate_time_domain(p, ss_td, d.probe, duration, step);
      const SidebandSolution lin_td = solve_sidebands(p, ss_td, d.probe);
      const double rel_td =
          std::abs(td - lin_td.c1_plus) / std::abs(lin_td.c1_plus);
      rep.max_rel_time_vs_linear = std::max(rep.max_rel_time_vs_linear, rel_td);
      ++rep.time_domain_draws;
    }
  }

  rep.pass = rep.max_rel_closed_vs_linear <= VerifyReport::kTolClosedLinear &&
             rep.max_linear_residual <= VerifyReport::kTolResidual &&
             rep.max_rel_time_vs_linear <= VerifyReport::kTolTimeLinear;
  return rep;
}

}  // namespace xcmm
