#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xcmm/oracle.hpp"
#include "xcmm/response.hpp"
#include "xcmm/verify.hpp"

using namespace xcmm;

namespace {

// Rates inflated enough for the integrators to settle within a short run.
SystemParams fast_params() {
  SystemParams p = default_params();
  p.kappa_x = 0.10 * p.omega_b;
  p.kappa_y = 0.08 * p.omega_b;
  p.kappa_m = 0.06 * p.omega_b;
  p.gamma_b = 0.05 * p.omega_b;
  p.g_mb_effective_override = Complex{0.32 * p.omega_b, 0.0};
  return p;
}

}  // namespace

TEST_CASE("sideband system encodes the four coupled equations") {
  const SystemParams p = fast_params();
  const SteadyState ss = solve_steady_state(p);
  const ProbeConfig probe{0.6, 1.2, 0.3 * p.omega_b};
  const SidebandSystem sys = build_sideband_system(p, ss, probe);

  // Drive vector: probe into cavity 1, xi e^{i phi} into cavity 2.
  CHECK(sys.drive[0] == Complex{1.0, 0.0});
  CHECK(std::abs(sys.drive[1] - std::polar(probe.xi, probe.phi)) < 1e-15);
  CHECK(sys.drive[2] == Complex{0.0, 0.0});
  CHECK(sys.drive[3] == Complex{0.0, 0.0});

  // Plugging the solution back in satisfies every row.
  const SidebandSolution sol = solve_sidebands(p, ss, probe);
  const std::array<Complex, 4> x{sol.c1_plus, sol.c2_plus, sol.m_plus, sol.b_plus};
  for (int r = 0; r < 4; ++r) {
    Complex acc{};
    for (int c = 0; c < 4; ++c) acc += sys.matrix[r][c] * x[c];
    CHECK(std::abs(acc - sys.drive[r]) < 1e-12 * std::abs(sys.drive[0]));
  }
  CHECK(sol.residual < 1e-13);
}

TEST_CASE("linear solve agrees with the closed form across probes") {
  const SystemParams p = fast_params();
  const SteadyState ss = solve_steady_state(p);
  for (double s : {-0.8, -0.2, 0.0, 0.45, 0.95})
    for (double xi : {0.0, 0.7, 1.9}) {
      const ProbeConfig probe{1.3, xi, s * p.omega_b};
      const SidebandSolution sol = solve_sidebands(p, ss, probe);
      const ResponsePoint r = probe_response(p, ss, probe);
      CHECK(std::abs(sol.c1_plus - r.c1_plus) / std::abs(r.c1_plus) < 1e-12);
    }
}

TEST_CASE("time-domain demodulation converges to the linear solve") {
  const SystemParams p = fast_params();
  const SteadyState ss = solve_steady_state(p);
  const ProbeConfig probe{0.8, 1.0, 0.27 * p.omega_b};
  const double duration = oracle_min_duration(p) * 2.0;
  const double step = oracle_max_step(p, probe.sigma) * 0.5;
  const Complex demod = integrate_time_domain(p, ss, probe, duration, step);
  const SidebandSolution sol = solve_sidebands(p, ss, probe);
  CHECK(std::abs(demod - sol.c1_plus) / std::abs(sol.c1_plus) < 1e-6);
}

TEST_CASE("undriven integration decays to zero") {
  const SystemParams p = fast_params();
  const SteadyState ss = solve_steady_state(p);
  const ProbeConfig probe{0.0, 0.0, 0.1 * p.omega_b};
  const double duration = oracle_min_duration(p) * 2.0;
  const double step = oracle_max_step(p, probe.sigma) * 0.5;
  const Complex demod =
      integrate_time_domain(p, ss, probe, duration, step, /*drive_scale=*/0.0);
  CHECK(std::abs(demod) < 1e-12);
}

TEST_CASE("step and duration preconditions are enforced") {
  const SystemParams p = fast_params();
  const SteadyState ss = solve_steady_state(p);
  const ProbeConfig probe{0.0, 0.5, 0.2 * p.omega_b};
  const double duration = oracle_min_duration(p);
  const double step = oracle_max_step(p, probe.sigma);
  CHECK_THROWS_AS(integrate_time_domain(p, ss, probe, 0.5 * duration, 0.5 * step),
                  IntegrationError);
  CHECK_THROWS_AS(integrate_time_domain(p, ss, probe, 2.0 * duration, 3.0 * step),
                  IntegrationError);
}

TEST_CASE("suggested bounds scale with the rates") {
  SystemParams p = fast_params();
  const double d0 = oracle_min_duration(p);
  p.gamma_b *= 0.5;  // gamma_b is already the slowest rate here
  CHECK(oracle_min_duration(p) == doctest::Approx(2.0 * d0).epsilon(1e-12));
  const double s0 = oracle_max_step(p, 0.0);
  CHECK(oracle_max_step(p, 100.0 * p.omega_b) < s0);
}

TEST_CASE("full nonlinear integration reproduces the closed-form steady state") {
  SystemParams p = default_params();
  p.gamma_b = 1e-2 * p.omega_b;  // inflate the phonon decay so the run is short
  const SteadyState closed = solve_steady_state(p);

  const double slowest = std::min({p.kappa_x, p.kappa_y, p.kappa_m, p.gamma_b});
  const double duration = 12.0 / slowest;
  const double step = 5e-3 / p.omega_b;
  const SteadyState td = integrate_full_nonlinear(p, duration, step);

  CHECK(std::abs(td.m_s - closed.m_s) / std::abs(closed.m_s) < 1e-4);
  CHECK(std::abs(td.b_s - closed.b_s) / std::abs(closed.b_s) < 1e-3);
  CHECK(std::abs(td.c1_s - closed.c1_s) / std::abs(closed.c1_s) < 1e-3);
}

TEST_CASE("randomized draws stay in the validated domain") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const OracleDraw d = random_draw(rng);
    CHECK_NOTHROW(d.params.validate());
    CHECK_NOTHROW(d.probe.validate());
    CHECK(std::abs(d.probe.sigma) <= d.params.omega_b);
    CHECK(d.probe.xi >= 0.0);
    CHECK(d.probe.xi <= 2.0);
  }
}

TEST_CASE("verification triangle passes on a reduced draw count") {
  const VerifyReport rep = run_verification(50, 123, 5);
  CHECK(rep.draws == 50);
  CHECK(rep.time_domain_draws == 5);
  CHECK(rep.max_rel_closed_vs_linear <= VerifyReport::kTolClosedLinear);
  CHECK(rep.max_linear_residual <= VerifyReport::kTolResidual);
  CHECK(rep.max_rel_time_vs_linear <= VerifyReport::kTolTimeLinear);
  CHECK(rep.pass);

  // Seeded: the same seed reproduces the same maxima.
  const VerifyReport again = run_verification(50, 123, 5);
  CHECK(again.max_rel_closed_vs_linear == rep.max_rel_closed_vs_linear);
  CHECK(again.max_rel_time_vs_linear == rep.max_rel_time_vs_linear);
}
