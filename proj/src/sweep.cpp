#include "xcmm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "xcmm/kernels.hpp"

namespace xcmm {

namespace {

std::size_t worker_count() {
  if (const char* env = std::getenv("XCMM_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<std::size_t>(n);
  }
  return 1;
}

void apply_axis(ProbeConfig& probe, Axis axis, double value) {
  switch (axis) {
    case Axis::Sigma: probe.sigma = value; break;
    case Axis::Phi: probe.phi = value; break;
    case Axis::Xi: probe.xi = value; break;
  }
}

// Partitions [0, n) into contiguous chunks and runs fn(begin, end) on each.
template <typename Fn>
void parallel_ranges(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

void AxisSpec::validate() const {
  if (count < 2) throw ValidationError("sweep.axis.count", "must be >= 2");
  if (!(start < stop)) throw ValidationError("sweep.axis", "start must be < stop");
}

double AxisSpec::coordinate(std::size_t index) const {
  const double t = static_cast<double>(index) / static_cast<double>(count - 1);
  return start + (stop - start) * t;
}

void SweepSpec::validate() const {
  axis1.validate();
  if (axis2) {
    axis2->validate();
    if (axis2->name == axis1.name)
      throw ValidationError("sweep.axis2.name", "must differ from axis1");
  }
  fixed.validate();
}

double evaluate_observable(const SystemParams& p, const SteadyState& ss,
                           Observable obs, const ProbeConfig& probe) {
  switch (obs) {
    case Observable::Absorption:
      return probe_response(p, ss, probe).chi_r;
    case Observable::Dispersion:
      return probe_response(p, ss, probe).chi_i;
    case Observable::Intensity:
      return transmission(p, ss, probe).intensity;
    case Observable::TmIntensity:
      return std::norm(transmission(p, ss, probe).t_m);
    case Observable::TphIntensity:
      return std::norm(transmission(p, ss, probe).t_ph);
    case Observable::GroupDelay: {
      const TransportPoint t = group_delay(p, ss, probe, DelayMethod::Analytic);
      if (t.singular) throw DegenerateDenominatorError(std::abs(t.t_p), probe.sigma);
      return t.tau_g;
    }
  }
  throw std::logic_error("unknown observable");
}

SweepResult run_sweep(const SystemParams& p, const SteadyState& ss,
                      const SweepSpec& spec) {
  spec.validate();

  SweepResult res;
  res.axis1_values.resize(spec.axis1.count);
  for (std::size_t i = 0; i < spec.axis1.count; ++i)
    res.axis1_values[i] = spec.axis1.coordinate(i);

  const bool two_d = spec.axis2.has_value();
  std::size_t n2 = 1;
  if (two_d) {
    n2 = spec.axis2->count;
    res.axis2_values.resize(n2);
    for (std::size_t j = 0; j < n2; ++j)
      res.axis2_values[j] = spec.axis2->coordinate(j);
  }

  const std::size_t total = spec.axis1.count * n2;
  res.values.assign(total, std::numeric_limits<double>::quiet_NaN());
  res.ok.assign(total, 0);

  const bool kernel_path = !two_d && spec.axis1.name == Axis::Sigma;
  if (kernel_path) {
    // Sigma spectra go through the batched kernel.
    const KernelInputs in = KernelInputs::from(p, ss, spec.fixed.xi, spec.fixed.phi);
    const SpectrumKernelFn kernel = active_spectrum_kernel();
    std::vector<std::uint8_t> singular(total, 0);
    parallel_ranges(total, [&](std::size_t lo, std::size_t hi) {
      SpectrumBlock block;
      double* slot = res.values.data() + lo;
      switch (spec.observable) {
        case Observable::Absorption: block.chi_r = slot; break;
        case Observable::Dispersion: block.chi_i = slot; break;
        case Observable::Intensity: block.intensity = slot; break;
        case Observable::TmIntensity: block.tm_intensity = slot; break;
        case Observable::TphIntensity: block.tph_intensity = slot; break;
        case Observable::GroupDelay:
          block.tau_g = slot;
          block.singular = singular.data() + lo;
          break;
      }
      kernel(in, res.axis1_values.data() + lo, hi - lo, block);
    });
    for (std::size_t i = 0; i < total; ++i)
      res.ok[i] = (spec.observable == Observable::GroupDelay && singular[i]) ? 0 : 1;
  } else {
    parallel_ranges(total, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t idx = lo; idx < hi; ++idx) {
        ProbeConfig probe = spec.fixed;
        apply_axis(probe, spec.axis1.name, res.axis1_values[idx / n2]);
        if (two_d) apply_axis(probe, spec.axis2->name, res.axis2_values[idx % n2]);
        try {
          res.values[idx] = evaluate_observable(p, ss, spec.observable, probe);
          res.ok[idx] = 1;
        } catch (const std::exception&) {
          res.ok[idx] = 0;  // node marked, sweep continues
        }
      }
    });
  }

  if (!two_d) {
    res.extrema = locate_extrema(p, ss, spec, res, false);
    for (std::size_t i = 0; i + 1 < total; ++i) {
      if (!res.ok[i] || !res.ok[i + 1]) continue;
      const double a = res.values[i], b = res.values[i + 1];
      if (a == 0.0) continue;
      if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
        // Linear interpolation of the crossing.
        const double x0 = res.axis1_values[i], x1 = res.axis1_values[i + 1];
        res.zero_crossings.push_back(x0 + (x1 - x0) * a / (a - b));
      }
    }
  }
  return res;
}

std::vector<Extremum> locate_extrema(const SystemParams& p, const SteadyState& ss,
                                     const SweepSpec& spec, const SweepResult& res,
                                     bool refine) {
  if (res.values.empty()) throw ValidationError("sweep.grid", "empty grid");
  std::vector<Extremum> out;
  if (!res.axis2_values.empty()) return out;  // interior extrema are 1-D only

  const std::size_t n = res.axis1_values.size();
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  const double tol = spec.axis1.name == Axis::Sigma
                         ? 1e-6 * p.omega_b
                         : 1e-9 * (spec.axis1.stop - spec.axis1.start);

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!res.ok[i - 1] || !res.ok[i] || !res.ok[i + 1]) continue;
    const double d0 = res.values[i] - res.values[i - 1];
    const double d1 = res.values[i + 1] - res.values[i];
    const bool minimum = d0 < 0.0 && d1 > 0.0;
    const bool maximum = d0 > 0.0 && d1 < 0.0;
    if (!minimum && !maximum) continue;

    Extremum e;
    e.coord1 = res.axis1_values[i];
    e.value = res.values[i];
    e.is_minimum = minimum;

    if (refine) {
      const double sign = minimum ? 1.0 : -1.0;
      auto f = [&](double x) {
        ProbeConfig probe = spec.fixed;
        apply_axis(probe, spec.axis1.name, x);
        return sign * evaluate_observable(p, ss, spec.observable, probe);
      };
      double a = res.axis1_values[i - 1];
      double b = res.axis1_values[i + 1];
      double x1 = b - golden * (b - a);
      double x2 = a + golden * (b - a);
      double f1 = f(x1), f2 = f(x2);
      while (b - a > tol) {
        if (f1 < f2) {
          b = x2; x2 = x1; f2 = f1;
          x1 = b - golden * (b - a);
          f1 = f(x1);
        } else {
          a = x1; x1 = x2; f1 = f2;
          x2 = a + golden * (b - a);
          f2 = f(x2);
        }
      }
      e.coord1 = 0.5 * (a + b);
      e.value = sign * std::min(f1, f2);
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace xcmm
