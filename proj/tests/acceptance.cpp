// Acceptance suite: one pass/fail line per criterion, fixed tolerances.
// Exit status is the number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "xcmm/oracle.hpp"
#include "xcmm/response.hpp"
#include "xcmm/sweep.hpp"
#include "xcmm/transport.hpp"
#include "xcmm/verify.hpp"

using namespace xcmm;

namespace {

int g_failures = 0;

void report(int id, const char* title, bool pass, double seconds,
            const std::string& detail) {
  std::printf("%s criterion %d: %s (%.2f s) %s\n", pass ? "PASS" : "FAIL", id,
              title, seconds, detail.c_str());
  if (!pass) ++g_failures;
}

void run(int id, const char* title, double time_limit_s,
         const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > time_limit_s) {
    pass = false;
    detail += " [over time limit " + std::to_string(time_limit_s) + " s]";
  }
  report(id, title, pass, dt, detail);
}

SystemParams combined_params() {
  SystemParams p = default_params();
  p.g_mb_effective_override = Complex{0.32 * p.omega_b, 0.0};
  p.coupling_gamma_1 = 0.18 * p.omega_b;
  p.coupling_gamma_2 = 0.18 * p.omega_b;
  return p;
}

// Refined absorption extrema over the symmetric default grid.
std::vector<Extremum> refined_extrema(const SystemParams& p, Observable obs,
                                      const ProbeConfig& fixed) {
  const SteadyState ss = solve_steady_state(p);
  SweepSpec spec;
  spec.axis1 = {Axis::Sigma, -p.omega_b, p.omega_b, 2001};
  spec.observable = obs;
  spec.fixed = fixed;
  const SweepResult res = run_sweep(p, ss, spec);
  return locate_extrema(p, ss, spec, res, true);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Criterion 1: with only the magnomechanical channel open (Gamma_2 = 0,
// coupling pinned to 0.32 omega_b, xi = 0), the two absorption dips must sit
// at sigma = +/- 0.32 omega_b to within 1e-3 omega_b.
bool criterion_1(std::string& detail) {
  SystemParams p = default_params();
  p.g_mb_effective_override = Complex{0.32 * p.omega_b, 0.0};
  p.coupling_gamma_2 = 0.0;
  const auto ext = refined_extrema(p, Observable::Absorption, {0.0, 0.0, 0.0});

  double neg = 0.0, pos = 0.0;
  for (const auto& e : ext)
    if (e.is_minimum) (e.coord1 < 0.0 ? neg : pos) = e.coord1 / p.omega_b;
  detail = "dips at " + fmt(neg) + ", " + fmt(pos) + " omega_b; target +/-0.32, tol 1e-3";
  return std::abs(neg + 0.32) <= 1e-3 && std::abs(pos - 0.32) <= 1e-3;
}

// Criterion 2: with only the photon-magnon channels open (coupling override 0,
// Gamma_2 = Gamma = 2 pi x 3.2 MHz, xi = 0), dips at sigma = +/- Gamma to
// within 1e-3 omega_b.
bool criterion_2(std::string& detail) {
  SystemParams p = default_params();
  p.g_mb_effective_override = Complex{0.0, 0.0};
  const double target = p.coupling_gamma_2 / p.omega_b;
  const auto ext = refined_extrema(p, Observable::Absorption, {0.0, 0.0, 0.0});

  double neg = 0.0, pos = 0.0;
  for (const auto& e : ext)
    if (e.is_minimum) (e.coord1 < 0.0 ? neg : pos) = e.coord1 / p.omega_b;
  detail = "dips at " + fmt(neg) + ", " + fmt(pos) + " omega_b; target +/-" +
           fmt(target) + ", tol 1e-3";
  return std::abs(neg + target) <= 1e-3 && std::abs(pos - target) <= 1e-3;
}

// Criterion 3: with both channels pinned (coupling 0.32 omega_b, Gamma_1 =
// Gamma_2 = 0.18 omega_b, xi = 0), the outer absorption maxima at sigma =
// +/- 0.49 omega_b to within 0.02 omega_b.
bool criterion_3(std::string& detail) {
  const SystemParams p = combined_params();
  const auto ext = refined_extrema(p, Observable::Absorption, {0.0, 0.0, 0.0});

  double neg = 0.0, pos = 0.0;
  for (const auto& e : ext)
    if (!e.is_minimum && std::abs(e.coord1) > 0.05 * p.omega_b) {
      const double c = e.coord1 / p.omega_b;
      if (c < 0.0) neg = std::abs(c) > std::abs(neg) ? c : neg;
      else pos = c > pos ? c : pos;
    }
  detail = "peaks at " + fmt(neg) + ", " + fmt(pos) + " omega_b; target +/-0.49, tol 0.02";
  return std::abs(neg + 0.49) <= 0.02 && std::abs(pos - 0.49) <= 0.02;
}

// Criterion 4: phase interference at sigma = 0 with the coupling off. At
// phi = pi a xi exists where |T_m - T_ph|/|T_m| <= 0.05 and |T_p|^2 there is
// 4 |T_m|^2 within 5%; at phi = 0 the same xi nearly cancels the output.
bool criterion_4(std::string& detail) {
  SystemParams p = default_params();
  p.g_mb_effective_override = Complex{0.0, 0.0};
  const SteadyState ss = solve_steady_state(p);

  double best_xi = -1.0, best_mismatch = 1e300;
  for (int i = 0; i <= 10000; ++i) {
    const double xi = static_cast<double>(i) / 10000.0;
    const TransportPoint t = transmission(p, ss, {std::numbers::pi, xi, 0.0});
    const double mismatch = std::abs(t.t_m - t.t_ph) / std::abs(t.t_m);
    if (mismatch < best_mismatch) {
      best_mismatch = mismatch;
      best_xi = xi;
    }
  }
  const TransportPoint at = transmission(p, ss, {std::numbers::pi, best_xi, 0.0});
  const double ratio = std::norm(at.t_p) / (4.0 * std::norm(at.t_m));
  const TransportPoint opp = transmission(p, ss, {0.0, best_xi, 0.0});
  const double dark = std::norm(opp.t_p);

  detail = "xi* = " + fmt(best_xi) + ", mismatch " + fmt(best_mismatch) +
           " (<=0.05), |T_p|^2/4|T_m|^2 = " + fmt(ratio) +
           " (in [0.95,1.05]), dark-state |T_p|^2 = " + fmt(dark) + " (<=0.01)";
  return best_mismatch <= 0.05 && ratio >= 0.95 && ratio <= 1.05 && dark <= 0.01;
}

// Criterion 5: slow/fast light switching with both channels pinned, xi = 1.
// phi = 0: tau_g > 0 across the grid with a 20-60 us peak at |sigma| in
// [0.4, 0.7] omega_b. phi = pi: tau_g(0) > 0 and a negative dip of 5-25 us
// magnitude somewhere in |sigma| in [0.4, 0.8] omega_b.
bool criterion_5(std::string& detail) {
  const SystemParams p = combined_params();
  const SteadyState ss = solve_steady_state(p);

  SweepSpec spec;
  spec.axis1 = {Axis::Sigma, -p.omega_b, p.omega_b, 2001};
  spec.observable = Observable::GroupDelay;

  spec.fixed = {0.0, 1.0, 0.0};
  const SweepResult a = run_sweep(p, ss, spec);
  bool all_positive = true;
  double peak = 0.0, peak_at = 0.0, min_val = 1e300;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (!a.ok[i]) continue;
    const double s = std::abs(a.axis1_values[i]) / p.omega_b;
    if (a.values[i] <= 0.0) all_positive = false;
    min_val = std::min(min_val, a.values[i]);
    if (s >= 0.4 && s <= 0.7 && a.values[i] > peak) {
      peak = a.values[i];
      peak_at = a.axis1_values[i] / p.omega_b;
    }
  }
  const bool phi0_ok =
      all_positive && peak >= 20e-6 && peak <= 60e-6;

  spec.fixed = {std::numbers::pi, 1.0, 0.0};
  const SweepResult b = run_sweep(p, ss, spec);
  double tau_zero = 0.0, dip = 0.0;
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    if (!b.ok[i]) continue;
    const double s = std::abs(b.axis1_values[i]) / p.omega_b;
    if (b.axis1_values[i] == 0.0) tau_zero = b.values[i];
    if (s >= 0.4 && s <= 0.8) dip = std::min(dip, b.values[i]);
  }
  const bool phipi_ok =
      tau_zero > 0.0 && dip <= -5e-6 && dip >= -25e-6;

  detail = "phi=0: min tau " + fmt(min_val) + " s, window peak " + fmt(peak) +
           " s at " + fmt(peak_at) + " omega_b (need all>0, 20-60 us); phi=pi: tau(0) = " +
           fmt(tau_zero) + " s (need >0), dip " + fmt(dip) + " s (need -5..-25 us)";
  return phi0_ok && phipi_ok;
}

// Criterion 6: the oracle triangle over 1000 seeded draws.
bool criterion_6(std::string& detail) {
  const VerifyReport rep = run_verification(1000, 7, 100);
  detail = "closed-vs-linear " + fmt(rep.max_rel_closed_vs_linear) +
           " (<=1e-9), residual " + fmt(rep.max_linear_residual) +
           " (<=1e-12), time-vs-linear " + fmt(rep.max_rel_time_vs_linear) +
           " (<=1e-6) over " + std::to_string(rep.draws) + "+" +
           std::to_string(rep.time_domain_draws) + " draws";
  return rep.pass;
}

// Criterion 7: symmetry suite on 1e4 random points, 1e-12 absolute.
bool criterion_7(std::string& detail) {
  const SystemParams p = combined_params();
  const SteadyState ss = solve_steady_state(p);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> us(-1.0, 1.0), uxi(0.0, 2.0),
      uphi(-kTwoPi, kTwoPi);
  double worst = 0.0;
  const char* worst_kind = "none";
  for (int i = 0; i < 10000; ++i) {
    const double sigma = us(rng) * p.omega_b;
    const double xi = uxi(rng);
    const double phi = uphi(rng);

    const ResponsePoint r1 = probe_response(p, ss, {phi, xi, -sigma});
    const ResponsePoint r2 = probe_response(p, ss, {-phi, xi, sigma});
    const double e1 = std::abs(r1.eps_T - std::conj(r2.eps_T));
    if (e1 > worst) { worst = e1; worst_kind = "conjugation"; }

    const TransportPoint t1 = group_delay(p, ss, {phi, xi, -sigma}, DelayMethod::Analytic);
    const TransportPoint t2 = group_delay(p, ss, {-phi, xi, sigma}, DelayMethod::Analytic);
    if (t1.has_delay && t2.has_delay) {
      const double e2 = std::abs(t1.tau_g - t2.tau_g);
      if (e2 > worst) { worst = e2; worst_kind = "delay mirror"; }
    }

    const ResponsePoint z1 = probe_response(p, ss, {phi, 0.0, sigma});
    const ResponsePoint z2 = probe_response(p, ss, {phi + 1.234, 0.0, sigma});
    const double e3 = std::abs(z1.eps_T - z2.eps_T);
    if (e3 > worst) { worst = e3; worst_kind = "xi=0 invariance"; }

    const ResponsePoint p1 = probe_response(p, ss, {phi, xi, sigma});
    const ResponsePoint p2 = probe_response(p, ss, {phi + kTwoPi, xi, sigma});
    const double e4 = std::abs(p1.eps_T - p2.eps_T);
    if (e4 > worst) { worst = e4; worst_kind = "2 pi periodicity"; }
  }
  detail = "worst deviation " + fmt(worst) + " (" + worst_kind + "), tol 1e-12";
  return worst <= 1e-12;
}

// Criterion 8: analytic vs finite-difference delay on the full default grid,
// max(1e-6 relative, 1e-12 s), singular nodes excluded.
bool criterion_8(std::string& detail) {
  const SystemParams p = default_params();
  const SteadyState ss = solve_steady_state(p);
  double worst = 0.0, worst_at = 0.0;
  int singular = 0;
  for (int i = 0; i < 2001; ++i) {
    const double sigma = -p.omega_b + 2.0 * p.omega_b * i / 2000.0;
    const ProbeConfig probe{0.0, 0.0, sigma};
    const TransportPoint a = group_delay(p, ss, probe, DelayMethod::Analytic);
    const TransportPoint f = group_delay(p, ss, probe, DelayMethod::FiniteDifference);
    if (a.singular || f.singular) {
      ++singular;
      continue;
    }
    const double tol = std::max(1e-6 * std::abs(a.tau_g), 1e-12);
    const double excess = std::abs(a.tau_g - f.tau_g) / tol;
    if (excess > worst) {
      worst = excess;
      worst_at = sigma / p.omega_b;
    }
  }
  detail = "worst error " + fmt(worst) + "x the allowance at sigma = " +
           fmt(worst_at) + " omega_b; " + std::to_string(singular) +
           " singular nodes excluded";
  return worst <= 1.0;
}

// Criterion 9: full nonlinear time-domain steady state vs the closed form at
// the experiment parameters with gamma_b inflated to 1e-2 omega_b, 1e-4
// relative on the magnon amplitude.
bool criterion_9(std::string& detail) {
  SystemParams p = default_params();
  p.gamma_b = 1e-2 * p.omega_b;
  const SteadyState closed = solve_steady_state(p);

  const double slowest = std::min({p.kappa_x, p.kappa_y, p.kappa_m, p.gamma_b});
  const SteadyState td =
      integrate_full_nonlinear(p, 12.0 / slowest, 5e-3 / p.omega_b);
  const double rel = std::abs(td.m_s - closed.m_s) / std::abs(closed.m_s);
  detail = "relative magnon-amplitude error " + fmt(rel) + ", tol 1e-4";
  return rel <= 1e-4;
}

}  // namespace

int main() {
  run(1, "magnomechanical dip locations", 1.0, criterion_1);
  run(2, "photon-magnon dip locations", 1.0, criterion_2);
  run(3, "combined-coupling peak locations", 1.0, criterion_3);
  run(4, "phase-interference identity", 1.0, criterion_4);
  run(5, "slow/fast light switching", 5.0, criterion_5);
  run(6, "oracle triangle", 60.0, criterion_6);
  run(7, "symmetry suite", 5.0, criterion_7);
  run(8, "delay-derivative consistency", 2.0, criterion_8);
  run(9, "nonlinear steady-state oracle", 30.0, criterion_9);
  std::printf("%d of 9 criteria failed\n", g_failures);
  return g_failures;
}
