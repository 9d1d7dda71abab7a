#include "xcmm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace xcmm {

namespace {

using Vec4 = std::array<Complex, 4>;

double min_rate(const SystemParams& p) {
  return std::min({p.kappa_x, p.kappa_y, p.kappa_m, p.gamma_b});
}

double max_rate(const SystemParams& p, double extra) {
  return std::max({p.kappa_x, p.kappa_y, p.kappa_m, p.gamma_b,
                   p.coupling_gamma_1, p.coupling_gamma_2, extra});
}

}  // namespace

double oracle_min_duration(const SystemParams& p) { return 10.0 / min_rate(p); }

double oracle_max_step(const SystemParams& p, double sigma) {
  return 1e-2 / max_rate(p, std::abs(sigma));
}

SidebandSystem build_sideband_system(const SystemParams& p, const SteadyState& ss,
                                     const ProbeConfig& probe) {
  const Complex i{0.0, 1.0};
  const double sigma = probe.sigma;
  const Complex g = ss.g_eff;

  SidebandSystem s;
  // (kappa_x - i sigma) c1+ + i Gamma_1 m+ = 1
  s.matrix[0] = {Complex{p.kappa_x, -sigma}, 0.0, i * p.coupling_gamma_1, 0.0};
  s.drive[0] = 1.0;
  // (kappa_y - i sigma) c2+ + i Gamma_2 m+ = xi e^{i phi}
  s.matrix[1] = {0.0, Complex{p.kappa_y, -sigma}, i * p.coupling_gamma_2, 0.0};
  s.drive[1] = probe.xi * std::polar(1.0, probe.phi);
  // i Gamma_1 c1+ + i Gamma_2 c2+ + (kappa_m - i sigma) m+ + i G b+ = 0
  s.matrix[2] = {i * p.coupling_gamma_1, i * p.coupling_gamma_2,
                 Complex{p.kappa_m, -sigma}, i * g};
  s.drive[2] = 0.0;
  // (gamma_b - i sigma) b+ + i G* m+ = 0
  s.matrix[3] = {0.0, 0.0, i * std::conj(g), Complex{p.gamma_b, -sigma}};
  s.drive[3] = 0.0;
  return s;
}

SidebandSolution solve_sidebands(const SystemParams& p, const SteadyState& ss,
                                 const ProbeConfig& probe) {
  const SidebandSystem sys = build_sideband_system(p, ss, probe);
  auto a = sys.matrix;
  auto b = sys.drive;

  double max_pivot = 0.0, min_pivot = 0.0;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 4; ++row)
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(b[pivot], b[col]);
    }
    const double mag = std::abs(a[col][col]);
    max_pivot = std::max(max_pivot, mag);
    min_pivot = col == 0 ? mag : std::min(min_pivot, mag);
    if (mag == 0.0 || max_pivot / mag > 1e15)
      throw SingularMatrixError(mag == 0.0 ? std::numeric_limits<double>::infinity()
                                           : max_pivot / mag);
    for (int row = col + 1; row < 4; ++row) {
      const Complex f = a[row][col] / a[col][col];
      for (int k = col; k < 4; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  Vec4 x{};
  for (int row = 3; row >= 0; --row) {
    Complex acc = b[row];
    for (int k = row + 1; k < 4; ++k) acc -= a[row][k] * x[k];
    x[row] = acc / a[row][row];
  }

  double rnorm2 = 0.0, bnorm2 = 0.0;
  for (int row = 0; row < 4; ++row) {
    Complex acc = -sys.drive[row];
    for (int k = 0; k < 4; ++k) acc += sys.matrix[row][k] * x[k];
    rnorm2 += std::norm(acc);
    bnorm2 += std::norm(sys.drive[row]);
  }

  SidebandSolution sol;
  sol.c1_plus = x[0];
  sol.c2_plus = x[1];
  sol.m_plus = x[2];
  sol.b_plus = x[3];
  sol.residual = bnorm2 > 0 ? std::sqrt(rnorm2 / bnorm2) : std::sqrt(rnorm2);
  return sol;
}

Complex integrate_time_domain(const SystemParams& p, const SteadyState& ss,
                              const ProbeConfig& probe, double duration,
                              double step, double drive_scale) {
  if (duration < oracle_min_duration(p))
    throw IntegrationError("duration below 10 / min(rates)");
  if (step > 1e-2 / max_rate(p, std::abs(probe.sigma)))
    throw IntegrationError("step above 1e-2 / max(rates, |sigma|)");

  const Complex i{0.0, 1.0};
  const double g1 = p.coupling_gamma_1;
  const double g2 = p.coupling_gamma_2;
  const Complex g = ss.g_eff;
  const Complex gc = std::conj(g);
  const Complex drive1 = drive_scale;
  const Complex drive2 = drive_scale * probe.xi * std::polar(1.0, probe.phi);
  const double sigma = probe.sigma;

  auto deriv = [&](const Vec4& z, Complex tone) -> Vec4 {
    return {-p.kappa_x * z[0] - i * g1 * z[2] + drive1 * tone,
            -p.kappa_y * z[1] - i * g2 * z[2] + drive2 * tone,
            -p.kappa_m * z[2] - i * g1 * z[0] - i * g2 * z[1] - i * g * z[3],
            -p.gamma_b * z[3] - i * gc * z[2]};
  };

  const auto n_steps = static_cast<std::size_t>(std::ceil(duration / step));
  const double h = duration / static_cast<double>(n_steps);
  // Incrementally rotated drive tone e^{-i sigma t}; rounding drift over the
  // run is far below the demodulation tolerance.
  const Complex rot_half = std::polar(1.0, -sigma * h * 0.5);
  const Complex rot_full = rot_half * rot_half;

  const double t_transient = 0.8 * duration;
  // Demodulation window: the final 20%, trimmed to whole probe periods.
  double window = duration - t_transient;
  if (sigma != 0.0) {
    const double period = kTwoPi / std::abs(sigma);
    const double whole = std::floor(window / period) * period;
    if (whole > 0.0) window = whole;
  }
  const double t_window_start = duration - window;

  Vec4 z{};  // start from rest
  Complex tone{1.0, 0.0};
  Complex acc_early{}, acc_late{};
  std::size_t n_early = 0, n_late = 0;
  const double t_window_mid = t_window_start + 0.5 * window;

  for (std::size_t s = 0; s < n_steps; ++s) {
    const double t = static_cast<double>(s) * h;
    const Complex tone_mid = tone * rot_half;
    const Complex tone_end = tone * rot_full;
    const Vec4 k1 = deriv(z, tone);
    Vec4 zt;
    for (int j = 0; j < 4; ++j) zt[j] = z[j] + 0.5 * h * k1[j];
    const Vec4 k2 = deriv(zt, tone_mid);
    for (int j = 0; j < 4; ++j) zt[j] = z[j] + 0.5 * h * k2[j];
    const Vec4 k3 = deriv(zt, tone_mid);
    for (int j = 0; j < 4; ++j) zt[j] = z[j] + h * k3[j];
    const Vec4 k4 = deriv(zt, tone_end);
    for (int j = 0; j < 4; ++j)
      z[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    tone = tone_end;

    const double t_next = t + h;
    if (t_next >= t_window_start) {
      // Least-squares fit of z = c1+ * tone reduces to the mean of z / tone.
      const Complex demod = z[0] * std::conj(tone);
      if (t_next < t_window_mid) {
        acc_early += demod;
        ++n_early;
      } else {
        acc_late += demod;
        ++n_late;
      }
    }
  }

  if (n_early == 0 || n_late == 0)
    throw IntegrationError("demodulation window too short for the step size");
  const Complex early = acc_early / static_cast<double>(n_early);
  const Complex late = acc_late / static_cast<double>(n_late);
  const Complex result = (acc_early + acc_late) / static_cast<double>(n_early + n_late);
  const double mag = std::abs(result);
  if (mag > 0.0 && std::abs(late - early) / mag > 1e-6)
    throw IntegrationError("transient not decayed: final-window drift " +
                           std::to_string(std::abs(late - early) / mag));
  return result;
}

SteadyState integrate_full_nonlinear(const SystemParams& p, double duration,
                                     double step) {
  if (duration < oracle_min_duration(p))
    throw IntegrationError("duration below 10 / min(rates)");

  // Drive-frame detunings. In pinned mode the bare magnon detuning is chosen
  // so that the Kerr-shifted detuning equals omega_b, matching the closed form.
  const double delta_xy = p.omega_b;
  const SteadyState closed = solve_steady_state(p);
  double delta_m0 = p.omega_b;
  if (p.drive_detuning_mode == DetuningMode::ResolvedSidebandPinned)
    delta_m0 = p.omega_b - 2.0 * p.g_mb * closed.b_s.real();

  if (step > 1e-2 / std::max(max_rate(p, p.omega_b), std::abs(delta_m0)))
    throw IntegrationError("step above 1e-2 / max(rates, omega_b, detunings)");

  const Complex i{0.0, 1.0};
  const double eps_m = rabi_frequency(p);
  const double g1 = p.coupling_gamma_1;
  const double g2 = p.coupling_gamma_2;

  auto deriv = [&](const Vec4& z) -> Vec4 {
    const Complex b_disp = z[3] + std::conj(z[3]);
    return {-(i * delta_xy + p.kappa_x) * z[0] - i * g1 * z[2],
            -(i * delta_xy + p.kappa_y) * z[1] - i * g2 * z[2],
            -(i * delta_m0 + p.kappa_m) * z[2] - i * g1 * z[0] - i * g2 * z[1] -
                i * p.g_mb * z[2] * b_disp + eps_m,
            -(i * p.omega_b + p.gamma_b) * z[3] - i * p.g_mb * std::norm(z[2])};
  };

  const auto n_steps = static_cast<std::size_t>(std::ceil(duration / step));
  const double h = duration / static_cast<double>(n_steps);
  const std::size_t avg_start = static_cast<std::size_t>(0.8 * static_cast<double>(n_steps));

  // The strong-drive Kerr response is bistable, so integration from rest can
  // settle on the other branch. Starting at the closed-form point makes the
  // run a fixed-point/stability check: any drift away shows up in the average.
  Vec4 z{closed.c1_s, closed.c2_s, closed.m_s, closed.b_s};
  Vec4 acc{};
  std::size_t n_avg = 0;
  for (std::size_t s = 0; s < n_steps; ++s) {
    const Vec4 k1 = deriv(z);
    Vec4 zt;
    for (int j = 0; j < 4; ++j) zt[j] = z[j] + 0.5 * h * k1[j];
    const Vec4 k2 = deriv(zt);
    for (int j = 0; j < 4; ++j) zt[j] = z[j] + 0.5 * h * k2[j];
    const Vec4 k3 = deriv(zt);
    for (int j = 0; j < 4; ++j) zt[j] = z[j] + h * k3[j];
    const Vec4 k4 = deriv(zt);
    for (int j = 0; j < 4; ++j)
      z[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    if (!std::isfinite(z[2].real()))
      throw IntegrationError("nonlinear integration diverged");
    if (s >= avg_start) {
      for (int j = 0; j < 4; ++j) acc[j] += z[j];
      ++n_avg;
    }
  }

  SteadyState ss;
  ss.c1_s = acc[0] / static_cast<double>(n_avg);
  ss.c2_s = acc[1] / static_cast<double>(n_avg);
  ss.m_s = acc[2] / static_cast<double>(n_avg);
  ss.b_s = acc[3] / static_cast<double>(n_avg);
  ss.delta_m = delta_m0 + 2.0 * p.g_mb * ss.b_s.real();
  ss.g_eff = p.g_mb * ss.m_s;
  ss.iterations = static_cast<int>(n_steps);
  return ss;
}

}  // namespace xcmm
