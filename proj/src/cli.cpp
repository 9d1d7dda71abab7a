#include "xcmm/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "xcmm/config.hpp"
#include "xcmm/emit.hpp"
#include "xcmm/kernels.hpp"
#include "xcmm/oracle.hpp"
#include "xcmm/sweep.hpp"
#include "xcmm/transport.hpp"
#include "xcmm/verify.hpp"

namespace xcmm {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  bool svg = false;
  double gmb_override = std::numeric_limits<double>::quiet_NaN();  // omega_b units
  std::string mode;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_output = true) {
  cmd->add_option("--config", o.config_path, "Config document (JSON)");
  cmd->add_option("--gmb-override", o.gmb_override,
                  "Pin the effective coupling G_mb (units of omega_b)");
  cmd->add_option("--mode", o.mode, "Detuning mode: pinned|selfconsistent")
      ->check(CLI::IsMember({"pinned", "selfconsistent"}));
  if (with_output) {
    cmd->add_option("--out", o.out_dir, "Output directory");
    cmd->add_option("--format", o.format, "Data format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--svg", o.svg, "Also render an SVG plot");
  }
}

Config resolve_config(const CommonOpts& o) {
  Config c = o.config_path.empty() ? default_config() : load_config_file(o.config_path);
  if (!std::isnan(o.gmb_override))
    c.params.g_mb_effective_override = Complex{o.gmb_override * c.params.omega_b, 0.0};
  if (o.mode == "pinned")
    c.params.drive_detuning_mode = DetuningMode::ResolvedSidebandPinned;
  else if (o.mode == "selfconsistent")
    c.params.drive_detuning_mode = DetuningMode::SelfConsistent;
  c.params.validate();
  return c;
}

std::string timestamp_utc() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("", "unwritable output path: " + path.string());
  out << content;
  if (!out) throw ConfigError("", "write failed: " + path.string());
}

// Sidecar manifest; data files reference it by name so their payload stays
// reproducible byte for byte (the timestamp lives only here).
std::string write_manifest(const fs::path& out_dir, const std::string& stem,
                           const Config& config,
                           const std::vector<std::string>& outputs) {
  json m;
  m["tool"] = "xcmm";
  m["version"] = kToolVersion;
  m["created"] = timestamp_utc();
  m["config"] = json::parse(save_config(config));
  m["outputs"] = outputs;
  const std::string name = stem + ".manifest.json";
  write_file(out_dir / name, m.dump(2) + "\n");
  return name;
}

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json csv_as_json(const CsvTable& t) {
  json out;
  for (const auto& col : t.columns) out[col.name] = col.values;
  return out;
}

void emit_table(const CommonOpts& o, const Config& config, const std::string& stem,
                CsvTable table, const std::string& svg) {
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  const std::string data_name = stem + (o.format == "json" ? ".json" : ".csv");
  std::vector<std::string> outputs{data_name};
  if (o.svg && !svg.empty()) outputs.push_back(stem + ".svg");
  const std::string manifest = write_manifest(dir, stem, config, outputs);

  if (o.format == "json") {
    json doc = csv_as_json(table);
    doc["manifest"] = manifest;
    write_file(dir / data_name, doc.dump(2) + "\n");
  } else {
    table.comments.insert(table.comments.begin(), "manifest: " + manifest);
    std::ostringstream os;
    write_csv(os, table);
    write_file(dir / data_name, os.str());
  }
  if (o.svg && !svg.empty()) write_file(dir / (stem + ".svg"), svg);
  std::cout << (dir / data_name).string() << "\n";
}

std::vector<double> over_omega_b(const std::vector<double>& v, double wb) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / wb;
  return out;
}

// ---------------------------------------------------------------------------
// steady

int cmd_steady(const CommonOpts& o, const std::string& out_path) {
  const Config c = resolve_config(o);
  const SteadyState ss = solve_steady_state(c.params);
  const double wb = c.params.omega_b;

  json doc;
  doc["m_s"] = complex_json(ss.m_s);
  doc["b_s"] = complex_json(ss.b_s);
  doc["c1_s"] = complex_json(ss.c1_s);
  doc["c2_s"] = complex_json(ss.c2_s);
  doc["delta_m"] = {{"rad_s", ss.delta_m}, {"omega_b_units", ss.delta_m / wb}};
  doc["g_eff"] = complex_json(ss.g_eff);
  doc["g_eff"]["abs_rad_s"] = std::abs(ss.g_eff);
  doc["g_eff"]["abs_omega_b_units"] = std::abs(ss.g_eff) / wb;
  doc["g_eff"]["overridden"] = ss.g_eff_overridden;
  doc["rates"] = {
      {"kappa_x", {{"rad_s", c.params.kappa_x}, {"omega_b_units", c.params.kappa_x / wb}}},
      {"kappa_y", {{"rad_s", c.params.kappa_y}, {"omega_b_units", c.params.kappa_y / wb}}},
      {"kappa_m", {{"rad_s", c.params.kappa_m}, {"omega_b_units", c.params.kappa_m / wb}}},
      {"gamma_b", {{"rad_s", c.params.gamma_b}, {"omega_b_units", c.params.gamma_b / wb}}}};
  doc["rabi_frequency_rad_s"] = rabi_frequency(c.params);
  doc["spin_count"] = spin_count(c.params);
  doc["iterations"] = ss.iterations;
  doc["converged"] = ss.converged;

  if (out_path.empty()) {
    std::cout << doc.dump(2) + "\n";
    return 0;
  }
  const fs::path path(out_path);
  const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  fs::create_directories(dir);
  doc["manifest"] = write_manifest(dir, path.stem().string(), c, {path.filename().string()});
  write_file(path, doc.dump(2) + "\n");
  std::cout << out_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// spectrum / delay

struct GridOpts {
  double sigma_min = -1.0, sigma_max = 1.0;  // omega_b units
  std::size_t points = 2001;
};

void add_grid(CLI::App* cmd, GridOpts& g) {
  cmd->add_option("--sigma-min", g.sigma_min, "Grid start (units of omega_b)");
  cmd->add_option("--sigma-max", g.sigma_max, "Grid stop (units of omega_b)");
  cmd->add_option("--points", g.points, "Grid size")->check(CLI::PositiveNumber);
}

struct ProbeOpts {
  double xi = std::numeric_limits<double>::quiet_NaN();
  double phi = std::numeric_limits<double>::quiet_NaN();
};

void apply_probe(const ProbeOpts& po, Config& c) {
  if (!std::isnan(po.xi)) c.probe.xi = po.xi;
  if (!std::isnan(po.phi)) c.probe.phi = po.phi;
  c.probe.validate();
}

int cmd_spectrum(const CommonOpts& o, const GridOpts& g, const ProbeOpts& po) {
  Config c = resolve_config(o);
  apply_probe(po, c);
  const double wb = c.params.omega_b;
  const SteadyState ss = solve_steady_state(c.params);

  const std::size_t n = g.points;
  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    sigma[i] = wb * (g.sigma_min + (g.sigma_max - g.sigma_min) * t);
  }
  std::vector<double> chi_r(n), chi_i(n), re_tp(n), im_tp(n), intensity(n);
  SpectrumBlock block;
  block.chi_r = chi_r.data();
  block.chi_i = chi_i.data();
  block.re_tp = re_tp.data();
  block.im_tp = im_tp.data();
  block.intensity = intensity.data();
  const KernelInputs in = KernelInputs::from(c.params, ss, c.probe.xi, c.probe.phi);
  active_spectrum_kernel()(in, sigma.data(), n, block);

  CsvTable t;
  t.comments = {"xcmm spectrum v1"};
  t.columns = {{"sigma_over_omega_b", over_omega_b(sigma, wb)},
               {"sigma_rad_s", sigma},
               {"re_eps_t", chi_r},
               {"im_eps_t", chi_i},
               {"re_t_p", re_tp},
               {"im_t_p", im_tp},
               {"intensity", intensity}};
  const std::string svg =
      o.svg ? render_line_svg("probe spectrum", "sigma / omega_b", "Re eps_T",
                              t.columns[0].values, {{"absorption", chi_r}})
            : "";
  emit_table(o, c, "spectrum", std::move(t), svg);
  return 0;
}

int cmd_delay(const CommonOpts& o, const GridOpts& g, const ProbeOpts& po,
              const std::string& method) {
  Config c = resolve_config(o);
  apply_probe(po, c);
  const double wb = c.params.omega_b;
  const SteadyState ss = solve_steady_state(c.params);

  const std::size_t n = g.points;
  std::vector<double> sigma(n), re_tp(n), im_tp(n), intensity(n), tau(n), flag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    sigma[i] = wb * (g.sigma_min + (g.sigma_max - g.sigma_min) * t);
  }
  const DelayMethod dm =
      method == "fd" ? DelayMethod::FiniteDifference : DelayMethod::Analytic;
  for (std::size_t i = 0; i < n; ++i) {
    ProbeConfig probe = c.probe;
    probe.sigma = sigma[i];
    const TransportPoint tp = group_delay(c.params, ss, probe, dm);
    re_tp[i] = tp.t_p.real();
    im_tp[i] = tp.t_p.imag();
    intensity[i] = tp.intensity;
    tau[i] = tp.tau_g;
    flag[i] = tp.singular ? 1.0 : 0.0;
  }

  CsvTable t;
  t.comments = {"xcmm delay v1", std::string("method: ") + (dm == DelayMethod::Analytic ? "analytic" : "fd")};
  t.columns = {{"sigma_over_omega_b", over_omega_b(sigma, wb)},
               {"sigma_rad_s", sigma},
               {"re_t_p", re_tp},
               {"im_t_p", im_tp},
               {"intensity", intensity},
               {"tau_g_seconds", tau},
               {"singular_flag", flag}};
  const std::string svg =
      o.svg ? render_line_svg("group delay", "sigma / omega_b", "tau_g (s)",
                              t.columns[0].values, {{"tau_g", tau}})
            : "";
  emit_table(o, c, "delay", std::move(t), svg);
  return 0;
}

// ---------------------------------------------------------------------------
// sweep2d

AxisSpec parse_axis(const std::string& text, double wb, const char* flag) {
  // name:start:stop:count, sigma in units of omega_b
  std::istringstream is(text);
  std::string name, start, stop, count;
  if (!std::getline(is, name, ':') || !std::getline(is, start, ':') ||
      !std::getline(is, stop, ':') || !std::getline(is, count))
    throw ConfigError(flag, "expected name:start:stop:count");
  AxisSpec a;
  if (name == "sigma") a.name = Axis::Sigma;
  else if (name == "phi") a.name = Axis::Phi;
  else if (name == "xi") a.name = Axis::Xi;
  else throw ConfigError(flag, "axis name must be sigma, phi or xi");
  const double scale = a.name == Axis::Sigma ? wb : 1.0;
  a.start = scale * std::stod(start);
  a.stop = scale * std::stod(stop);
  a.count = static_cast<std::size_t>(std::stoul(count));
  return a;
}

Observable parse_observable(const std::string& name) {
  static const std::map<std::string, Observable> table = {
      {"absorption", Observable::Absorption},
      {"dispersion", Observable::Dispersion},
      {"intensity", Observable::Intensity},
      {"t_m_intensity", Observable::TmIntensity},
      {"t_ph_intensity", Observable::TphIntensity},
      {"group_delay", Observable::GroupDelay}};
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("--observable", "unknown observable " + name);
  return it->second;
}

const char* axis_label(Axis a) {
  switch (a) {
    case Axis::Sigma: return "sigma_rad_s";
    case Axis::Phi: return "phi";
    case Axis::Xi: return "xi";
  }
  return "?";
}

int cmd_sweep2d(const CommonOpts& o, const std::string& axis1, const std::string& axis2,
                const std::string& observable, const ProbeOpts& po,
                const std::string& layout) {
  Config c = resolve_config(o);
  apply_probe(po, c);
  const double wb = c.params.omega_b;

  SweepSpec spec;
  spec.axis1 = parse_axis(axis1, wb, "--axis1");
  spec.axis2 = parse_axis(axis2, wb, "--axis2");
  spec.observable = parse_observable(observable);
  spec.fixed = c.probe;

  const SteadyState ss = solve_steady_state(c.params);
  const SweepResult res = run_sweep(c.params, ss, spec);
  const std::size_t n1 = res.axis1_values.size(), n2 = res.axis2_values.size();

  CsvTable t;
  t.comments = {"xcmm sweep2d v1", std::string("observable: ") + observable,
                std::string("layout: ") + layout};
  if (layout == "matrix") {
    // First column axis1, remaining columns one per axis2 value.
    t.columns.push_back({axis_label(spec.axis1.name), res.axis1_values});
    for (std::size_t j = 0; j < n2; ++j) {
      CsvColumn col;
      col.name = std::string(axis_label(spec.axis2->name)) + "=" +
                 format_double(res.axis2_values[j]);
      col.values.resize(n1);
      for (std::size_t i = 0; i < n1; ++i) col.values[i] = res.values[i * n2 + j];
      t.columns.push_back(std::move(col));
    }
  } else {
    CsvColumn c1{axis_label(spec.axis1.name), {}}, c2{axis_label(spec.axis2->name), {}},
        cv{observable, {}}, cok{"ok", {}};
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) {
        c1.values.push_back(res.axis1_values[i]);
        c2.values.push_back(res.axis2_values[j]);
        cv.values.push_back(res.values[i * n2 + j]);
        cok.values.push_back(res.ok[i * n2 + j]);
      }
    t.columns = {std::move(c1), std::move(c2), std::move(cv), std::move(cok)};
  }

  const std::string svg =
      o.svg ? render_heatmap_svg(observable, axis_label(spec.axis1.name),
                                 axis_label(spec.axis2->name), res.axis1_values,
                                 res.axis2_values, res.values)
            : "";
  emit_table(o, c, "sweep2d", std::move(t), svg);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const CommonOpts& o, int draws, std::uint64_t seed, int td_draws) {
  (void)o;
  const VerifyReport rep =
      run_verification(draws, seed, td_draws > 0 ? td_draws : std::max(1, draws / 10));
  json doc;
  doc["draws"] = rep.draws;
  doc["seed"] = rep.seed;
  doc["max_rel_closed_vs_linear"] = rep.max_rel_closed_vs_linear;
  doc["max_linear_residual"] = rep.max_linear_residual;
  doc["time_domain_draws"] = rep.time_domain_draws;
  doc["max_rel_time_vs_linear"] = rep.max_rel_time_vs_linear;
  doc["tolerances"] = {{"closed_vs_linear", VerifyReport::kTolClosedLinear},
                       {"linear_residual", VerifyReport::kTolResidual},
                       {"time_vs_linear", VerifyReport::kTolTimeLinear}};
  doc["pass"] = rep.pass;
  std::cout << doc.dump(2) << "\n";
  if (!rep.pass) throw VerificationFailure("oracle triangle tolerance breach");
  return 0;
}

// ---------------------------------------------------------------------------
// fig — canned figure recipes

struct Series {
  std::string label;
  double xi;
  double phi;
};

Config fig_config(const CommonOpts& o, bool mit_only, bool no_gamma2, bool combined) {
  Config c = resolve_config(o);
  const double wb = c.params.omega_b;
  if (mit_only) {
    c.params.g_mb_effective_override = Complex{0.0, 0.0};
    c.params.coupling_gamma_1 = 0.18 * wb;
    c.params.coupling_gamma_2 = 0.18 * wb;
  } else if (no_gamma2) {
    c.params.g_mb_effective_override = Complex{0.32 * wb, 0.0};
    c.params.coupling_gamma_1 = 0.18 * wb;
    c.params.coupling_gamma_2 = 0.0;
  } else if (combined) {
    c.params.g_mb_effective_override = Complex{0.32 * wb, 0.0};
    c.params.coupling_gamma_1 = 0.18 * wb;
    c.params.coupling_gamma_2 = 0.18 * wb;
  }
  return c;
}

CsvTable sigma_series_table(const Config& c, Observable obs,
                            const std::vector<Series>& series) {
  const double wb = c.params.omega_b;
  const SteadyState ss = solve_steady_state(c.params);
  SweepSpec spec;
  spec.axis1 = {Axis::Sigma, -wb, wb, 2001};
  spec.observable = obs;

  CsvTable t;
  std::vector<double> sigma(spec.axis1.count);
  for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = spec.axis1.coordinate(i);
  t.columns.push_back({"sigma_over_omega_b", over_omega_b(sigma, wb)});
  t.columns.push_back({"sigma_rad_s", sigma});
  for (const auto& s : series) {
    spec.fixed = ProbeConfig{s.phi, s.xi, 0.0};
    const SweepResult res = run_sweep(c.params, ss, spec);
    t.columns.push_back({s.label, res.values});
  }
  return t;
}

CsvTable xi_scan_table(const Config& c, double sigma, double phi) {
  const SteadyState ss = solve_steady_state(c.params);
  const std::size_t n = 501;
  CsvColumn cxi{"xi", {}}, ctp{"tp_intensity", {}}, ctm{"tm_intensity", {}},
      cph{"tph_intensity", {}};
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = static_cast<double>(i) / static_cast<double>(n - 1);
    const TransportPoint tp = transmission(c.params, ss, ProbeConfig{phi, xi, sigma});
    cxi.values.push_back(xi);
    ctp.values.push_back(std::norm(tp.t_p));
    ctm.values.push_back(std::norm(tp.t_m));
    cph.values.push_back(std::norm(tp.t_ph));
  }
  CsvTable t;
  t.columns = {std::move(cxi), std::move(ctp), std::move(ctm), std::move(cph)};
  return t;
}

CsvTable contour_table(const Config& c, double sigma) {
  const SteadyState ss = solve_steady_state(c.params);
  SweepSpec spec;
  spec.axis1 = {Axis::Phi, 0.0, kTwoPi, 101};
  spec.axis2 = AxisSpec{Axis::Xi, 0.0, 2.0, 101};
  spec.observable = Observable::Absorption;
  spec.fixed = ProbeConfig{0.0, 0.0, sigma};
  const SweepResult res = run_sweep(c.params, ss, spec);

  CsvColumn cp{"phi", {}}, cx{"xi", {}}, cv{"absorption", {}};
  for (std::size_t i = 0; i < res.axis1_values.size(); ++i)
    for (std::size_t j = 0; j < res.axis2_values.size(); ++j) {
      cp.values.push_back(res.axis1_values[i]);
      cx.values.push_back(res.axis2_values[j]);
      cv.values.push_back(res.values[i * res.axis2_values.size() + j]);
    }
  CsvTable t;
  t.columns = {std::move(cp), std::move(cx), std::move(cv)};
  return t;
}

const std::vector<Series> kPhaseSeries = {{"xi_0", 0.0, 0.0},
                                          {"xi_1_phi_0", 1.0, 0.0},
                                          {"xi_1_phi_half_pi", 1.0, 0.5 * std::numbers::pi},
                                          {"xi_1_phi_pi", 1.0, std::numbers::pi},
                                          {"xi_1_phi_3half_pi", 1.0, 1.5 * std::numbers::pi}};

std::vector<Series> xi_family(double phi, const char* suffix) {
  std::vector<Series> s;
  for (double xi : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    std::ostringstream label;
    label << "xi_" << xi << "_" << suffix;
    s.push_back({label.str(), xi, phi});
  }
  return s;
}

int cmd_fig(const CommonOpts& o, const std::string& id) {
  const double pi = std::numbers::pi;
  Config c;
  CsvTable t;
  std::string ylabel = "Re eps_T";

  if (id == "2a") {
    // Coupling roles at xi = 0: each channel toggled in turn.
    c = fig_config(o, false, false, true);
    Config c1 = c;  // Gamma_1 only
    c1.params.coupling_gamma_2 = 0.0;
    c1.params.g_mb_effective_override = Complex{0.0, 0.0};
    Config c2 = c;  // Gamma_1 + G_mb
    c2.params.coupling_gamma_2 = 0.0;
    Config c3 = c;  // Gamma_1 + Gamma_2
    c3.params.g_mb_effective_override = Complex{0.0, 0.0};
    t = sigma_series_table(c1, Observable::Absorption, {{"gamma1_only", 0.0, 0.0}});
    t.columns.push_back(
        sigma_series_table(c2, Observable::Absorption, {{"gamma1_gmb", 0.0, 0.0}}).columns[2]);
    t.columns.push_back(
        sigma_series_table(c3, Observable::Absorption, {{"gamma1_gamma2", 0.0, 0.0}}).columns[2]);
    t.columns.push_back(
        sigma_series_table(c, Observable::Absorption, {{"all_couplings", 0.0, 0.0}}).columns[2]);
  } else if (id == "2b") {
    c = fig_config(o, false, true, false);
    t = sigma_series_table(c, Observable::Absorption, {{"absorption", 0.0, 0.0}});
  } else if (id == "2c") {
    c = fig_config(o, true, false, false);
    t = sigma_series_table(c, Observable::Absorption, {{"absorption", 0.0, 0.0}});
  } else if (id == "3a" || id == "3b") {
    c = fig_config(o, id == "3a", false, id == "3b");
    t = sigma_series_table(c, Observable::Absorption, kPhaseSeries);
  } else if (id == "4a" || id == "4b" || id == "4c" || id == "4d") {
    c = fig_config(o, false, false, true);
    const double phi = id == "4a" ? 0.0 : id == "4b" ? 0.5 * pi : id == "4c" ? pi : 1.5 * pi;
    t = sigma_series_table(c, Observable::Absorption, xi_family(phi, id.c_str()));
  } else if (id == "5a" || id == "5b") {
    c = fig_config(o, true, false, false);
    t = sigma_series_table(c, Observable::Absorption,
                           xi_family(id == "5a" ? 0.0 : pi, id.c_str()));
  } else if (id == "6a" || id == "6b" || id == "6c") {
    c = fig_config(o, id == "6a", false, id != "6a");
    const double sigma = id == "6c" ? 0.49 * c.params.omega_b : 0.0;
    t = contour_table(c, sigma);
    ylabel = "absorption";
  } else if (id == "7a" || id == "7b") {
    c = fig_config(o, id == "7a", false, id == "7b");
    t = sigma_series_table(c, Observable::Intensity, kPhaseSeries);
    ylabel = "|T_p|^2";
  } else if (id == "8a" || id == "8b" || id == "8c" || id == "8d") {
    const bool with_gmb = id == "8c" || id == "8d";
    c = fig_config(o, !with_gmb, false, with_gmb);
    const double sigma = with_gmb ? 0.49 * c.params.omega_b : 0.0;
    const double phi = (id == "8a" || id == "8c") ? 0.0 : pi;
    t = xi_scan_table(c, sigma, phi);
    ylabel = "|T|^2";
  } else if (id == "9") {
    c = fig_config(o, false, false, true);
    t = sigma_series_table(c, Observable::GroupDelay,
                           {{"phi_0", 1.0, 0.0},
                            {"phi_half_pi", 1.0, 0.5 * pi},
                            {"phi_pi", 1.0, pi},
                            {"phi_3half_pi", 1.0, 1.5 * pi}});
    ylabel = "tau_g (s)";
  } else {
    throw ConfigError("fig", "unknown figure id: " + id +
                                 " (expected 2a..2c, 3a, 3b, 4a..4d, 5a, 5b, "
                                 "6a..6c, 7a, 7b, 8a..8d, 9)");
  }

  t.comments.insert(t.comments.begin(), "xcmm fig " + id + " v1");
  std::string svg;
  if (o.svg) {
    if (id.starts_with("6")) {
      svg = "";  // contours are emitted as long-format CSV only
    } else {
      std::vector<SvgSeries> series;
      for (std::size_t i = 2; i < t.columns.size(); ++i)
        series.push_back({t.columns[i].name, t.columns[i].values});
      if (t.columns[0].name == "xi") {
        series.clear();
        for (std::size_t i = 1; i < t.columns.size(); ++i)
          series.push_back({t.columns[i].name, t.columns[i].values});
        svg = render_line_svg("fig " + id, "xi", ylabel, t.columns[0].values, series);
      } else {
        svg = render_line_svg("fig " + id, "sigma / omega_b", ylabel,
                              t.columns[0].values, series);
      }
    }
  }
  emit_table(o, c, "fig" + id, std::move(t), svg);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Steady-state probe response of a cross-cavity magnomechanical system"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CommonOpts steady_o;
  std::string steady_out;
  auto* steady_cmd = app.add_subcommand("steady", "Print the classical steady state as JSON");
  add_common(steady_cmd, steady_o, false);
  steady_cmd->add_option("--out", steady_out, "Write JSON here instead of stdout");

  CommonOpts spec_o;
  GridOpts spec_g;
  ProbeOpts spec_p;
  auto* spec_cmd = app.add_subcommand("spectrum", "Probe response over a sigma grid");
  add_common(spec_cmd, spec_o);
  add_grid(spec_cmd, spec_g);
  spec_cmd->add_option("--xi", spec_p.xi, "Probe amplitude ratio");
  spec_cmd->add_option("--phi", spec_p.phi, "Probe relative phase (rad)");

  CommonOpts delay_o;
  GridOpts delay_g;
  ProbeOpts delay_p;
  std::string delay_method = "analytic";
  auto* delay_cmd = app.add_subcommand("delay", "Transmission and group delay over a sigma grid");
  add_common(delay_cmd, delay_o);
  add_grid(delay_cmd, delay_g);
  delay_cmd->add_option("--xi", delay_p.xi, "Probe amplitude ratio");
  delay_cmd->add_option("--phi", delay_p.phi, "Probe relative phase (rad)");
  delay_cmd->add_option("--method", delay_method, "analytic|fd")
      ->check(CLI::IsMember({"analytic", "fd"}));

  CommonOpts sweep_o;
  ProbeOpts sweep_p;
  std::string sweep_a1, sweep_a2, sweep_obs = "absorption", sweep_layout = "long";
  auto* sweep_cmd = app.add_subcommand("sweep2d", "2-D parameter sweep");
  add_common(sweep_cmd, sweep_o);
  sweep_cmd->add_option("--axis1", sweep_a1, "name:start:stop:count (sigma in omega_b units)")
      ->required();
  sweep_cmd->add_option("--axis2", sweep_a2, "name:start:stop:count")->required();
  sweep_cmd->add_option("--observable", sweep_obs, "Observable to evaluate");
  sweep_cmd->add_option("--layout", sweep_layout, "CSV layout")
      ->check(CLI::IsMember({"long", "matrix"}));
  sweep_cmd->add_option("--xi", sweep_p.xi, "Fixed xi");
  sweep_cmd->add_option("--phi", sweep_p.phi, "Fixed phi");

  CommonOpts verify_o;
  int verify_draws = 1000, verify_td = 0;
  std::uint64_t verify_seed = 7;
  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle triangle");
  add_common(verify_cmd, verify_o, false);
  verify_cmd->add_option("--draws", verify_draws, "Random parameter draws");
  verify_cmd->add_option("--seed", verify_seed, "RNG seed");
  verify_cmd->add_option("--time-domain-draws", verify_td,
                         "Draws for the RK4 leg (default draws/10)");

  CommonOpts fig_o;
  std::string fig_id;
  auto* fig_cmd = app.add_subcommand("fig", "Reproduce a canned figure recipe");
  add_common(fig_cmd, fig_o);
  fig_cmd->add_option("id", fig_id, "Figure id, e.g. 2b or 9")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (steady_cmd->parsed()) return cmd_steady(steady_o, steady_out);
    if (spec_cmd->parsed()) return cmd_spectrum(spec_o, spec_g, spec_p);
    if (delay_cmd->parsed()) return cmd_delay(delay_o, delay_g, delay_p, delay_method);
    if (sweep_cmd->parsed())
      return cmd_sweep2d(sweep_o, sweep_a1, sweep_a2, sweep_obs, sweep_p, sweep_layout);
    if (verify_cmd->parsed())
      return cmd_verify(verify_o, verify_draws, verify_seed, verify_td);
    if (fig_cmd->parsed()) return cmd_fig(fig_o, fig_id);
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace xcmm
