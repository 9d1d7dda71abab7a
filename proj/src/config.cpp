#include "xcmm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace xcmm {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ConfigError(path + "." + key, "expected a number");
  return v.get<double>();
}

class Loader {
 public:
  explicit Loader(const json& doc) : doc_(doc) {}

  Config load() {
    if (!doc_.is_object()) throw ConfigError("", "document must be a JSON object");
    check_keys(doc_, "", {"frequency_units", "modes", "damping", "couplings",
                          "drive", "material", "probe", "sweep"});

    if (doc_.contains("frequency_units")) {
      const std::string units = doc_.at("frequency_units").get<std::string>();
      if (units == "angular") freq_scale_ = 1.0;
      else if (units == "hz") freq_scale_ = kTwoPi;
      else throw ConfigError("frequency_units", "must be \"hz\" or \"angular\"");
    }

    Config c;
    c.params = default_params();
    load_modes(c.params);
    load_damping(c.params);
    load_couplings(c.params);
    load_drive(c.params);
    load_material(c.params);
    load_probe(c);
    load_sweep(c);
    c.params.validate();
    c.probe.validate();
    c.sweep.validate();
    return c;
  }

 private:
  const json& doc_;
  double freq_scale_ = kTwoPi;  // Hz documents are converted to angular once

  double freq(const json& obj, const std::string& path, const std::string& key,
              double fallback_rad_s) {
    if (!obj.contains(key)) return fallback_rad_s;
    return freq_scale_ * get_number(obj, path, key, 0.0);
  }

  void load_modes(SystemParams& p) {
    if (!doc_.contains("modes")) return;
    const json& m = doc_.at("modes");
    check_keys(m, "modes", {"omega_cavity_1", "omega_cavity_2", "omega_b", "bias_field"});
    p.omega_cavity_1 = freq(m, "modes", "omega_cavity_1", p.omega_cavity_1);
    p.omega_cavity_2 = freq(m, "modes", "omega_cavity_2", p.omega_cavity_2);
    const double prev_omega_b = p.omega_b;
    p.omega_b = freq(m, "modes", "omega_b", p.omega_b);
    // gamma_b defaults to 1e-5 omega_b; keep that tie unless overridden below.
    if (p.omega_b != prev_omega_b) p.gamma_b = 1e-5 * p.omega_b;
    if (m.contains("bias_field") && !m.at("bias_field").is_null())
      p.bias_field = get_number(m, "modes", "bias_field", 0.0);
  }

  void load_damping(SystemParams& p) {
    if (!doc_.contains("damping")) return;
    const json& d = doc_.at("damping");
    check_keys(d, "damping", {"kappa_x", "kappa_y", "kappa_m", "gamma_b"});
    p.kappa_x = freq(d, "damping", "kappa_x", p.kappa_x);
    p.kappa_y = freq(d, "damping", "kappa_y", p.kappa_y);
    p.kappa_m = freq(d, "damping", "kappa_m", p.kappa_m);
    p.gamma_b = freq(d, "damping", "gamma_b", p.gamma_b);
  }

  void load_couplings(SystemParams& p) {
    if (!doc_.contains("couplings")) return;
    const json& c = doc_.at("couplings");
    check_keys(c, "couplings",
               {"coupling_gamma_1", "coupling_gamma_2", "g_mb", "g_mb_effective_override"});
    p.coupling_gamma_1 = freq(c, "couplings", "coupling_gamma_1", p.coupling_gamma_1);
    p.coupling_gamma_2 = freq(c, "couplings", "coupling_gamma_2", p.coupling_gamma_2);
    p.g_mb = freq(c, "couplings", "g_mb", p.g_mb);
    if (c.contains("g_mb_effective_override") && !c.at("g_mb_effective_override").is_null()) {
      const json& o = c.at("g_mb_effective_override");
      check_keys(o, "couplings.g_mb_effective_override", {"re", "im"});
      p.g_mb_effective_override =
          Complex{freq_scale_ * get_number(o, "couplings.g_mb_effective_override", "re", 0.0),
                  freq_scale_ * get_number(o, "couplings.g_mb_effective_override", "im", 0.0)};
    }
  }

  void load_drive(SystemParams& p) {
    if (!doc_.contains("drive")) return;
    const json& d = doc_.at("drive");
    check_keys(d, "drive",
               {"gyromagnetic_ratio", "drive_field", "temperature", "drive_detuning_mode"});
    p.gyromagnetic_ratio = freq(d, "drive", "gyromagnetic_ratio", p.gyromagnetic_ratio);
    p.drive_field = get_number(d, "drive", "drive_field", p.drive_field);
    // temperature is accepted for completeness and enters no equation here.
    if (d.contains("drive_detuning_mode")) {
      const std::string mode = d.at("drive_detuning_mode").get<std::string>();
      if (mode == "pinned")
        p.drive_detuning_mode = DetuningMode::ResolvedSidebandPinned;
      else if (mode == "selfconsistent")
        p.drive_detuning_mode = DetuningMode::SelfConsistent;
      else
        throw ConfigError("drive.drive_detuning_mode",
                          "must be \"pinned\" or \"selfconsistent\"");
    }
  }

  void load_material(SystemParams& p) {
    if (!doc_.contains("material")) return;
    const json& m = doc_.at("material");
    check_keys(m, "material", {"spin_density", "sphere_diameter"});
    p.spin_density = get_number(m, "material", "spin_density", p.spin_density);
    p.sphere_diameter = get_number(m, "material", "sphere_diameter", p.sphere_diameter);
  }

  void load_probe(Config& c) {
    if (!doc_.contains("probe")) return;
    const json& pr = doc_.at("probe");
    check_keys(pr, "probe", {"phi", "xi", "sigma", "power_x", "power_y"});
    c.probe.phi = get_number(pr, "probe", "phi", c.probe.phi);
    c.probe.sigma = freq(pr, "probe", "sigma", c.probe.sigma);
    const bool has_powers = pr.contains("power_x") && pr.contains("power_y");
    if (pr.contains("xi")) {
      if (has_powers)
        throw ConfigError("probe.xi", "give either xi or power_x/power_y, not both");
      c.probe.xi = get_number(pr, "probe", "xi", 0.0);
    } else if (has_powers) {
      const double px = get_number(pr, "probe", "power_x", 0.0);
      const double py = get_number(pr, "probe", "power_y", 0.0);
      const double ex =
          probe_amplitude(px, c.params.kappa_x, c.params.omega_cavity_1);
      const double ey =
          probe_amplitude(py, c.params.kappa_y, c.params.omega_cavity_2);
      if (ex <= 0.0) throw ConfigError("probe.power_x", "must be > 0 to define xi");
      c.probe.xi = ey / ex;
    } else if (pr.contains("power_x") || pr.contains("power_y")) {
      throw ConfigError("probe.power_x", "power_x and power_y must be given together");
    }
  }

  AxisSpec load_axis(const json& a, const std::string& path) {
    check_keys(a, path, {"name", "start", "stop", "count"});
    AxisSpec spec;
    const std::string name = a.at("name").get<std::string>();
    if (name == "sigma") spec.name = Axis::Sigma;
    else if (name == "phi") spec.name = Axis::Phi;
    else if (name == "xi") spec.name = Axis::Xi;
    else throw ConfigError(path + ".name", "must be sigma, phi or xi");
    const double scale = spec.name == Axis::Sigma ? freq_scale_ : 1.0;
    spec.start = scale * get_number(a, path, "start", 0.0);
    spec.stop = scale * get_number(a, path, "stop", 0.0);
    if (!a.contains("count")) throw ConfigError(path + ".count", "missing required field");
    spec.count = a.at("count").get<std::size_t>();
    return spec;
  }

  void load_sweep(Config& c) {
    // Default: 2001-point sigma grid over [-omega_b, omega_b]; the odd count
    // pins sigma = 0 on a node.
    c.sweep.axis1 = {Axis::Sigma, -c.params.omega_b, c.params.omega_b, 2001};
    c.sweep.observable = Observable::Absorption;
    c.sweep.fixed = c.probe;
    if (!doc_.contains("sweep")) return;
    const json& s = doc_.at("sweep");
    check_keys(s, "sweep", {"observable", "axis1", "axis2"});
    if (s.contains("observable")) {
      const std::string o = s.at("observable").get<std::string>();
      if (o == "absorption") c.sweep.observable = Observable::Absorption;
      else if (o == "dispersion") c.sweep.observable = Observable::Dispersion;
      else if (o == "intensity") c.sweep.observable = Observable::Intensity;
      else if (o == "t_m_intensity") c.sweep.observable = Observable::TmIntensity;
      else if (o == "t_ph_intensity") c.sweep.observable = Observable::TphIntensity;
      else if (o == "group_delay") c.sweep.observable = Observable::GroupDelay;
      else throw ConfigError("sweep.observable", "unknown observable \"" + o + "\"");
    }
    if (s.contains("axis1")) c.sweep.axis1 = load_axis(s.at("axis1"), "sweep.axis1");
    if (s.contains("axis2")) c.sweep.axis2 = load_axis(s.at("axis2"), "sweep.axis2");
  }
};

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::Sigma: return "sigma";
    case Axis::Phi: return "phi";
    case Axis::Xi: return "xi";
  }
  return "?";
}

const char* observable_name(Observable o) {
  switch (o) {
    case Observable::Absorption: return "absorption";
    case Observable::Dispersion: return "dispersion";
    case Observable::Intensity: return "intensity";
    case Observable::TmIntensity: return "t_m_intensity";
    case Observable::TphIntensity: return "t_ph_intensity";
    case Observable::GroupDelay: return "group_delay";
  }
  return "?";
}

}  // namespace

Config load_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed document: ") + e.what());
  }
  try {
    return Loader(doc).load();
  } catch (const ValidationError& e) {
    throw ConfigError(e.key(), e.what());
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("malformed document: ") + e.what());
  }
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

Config default_config() { return load_config("{}"); }

std::string save_config(const Config& c) {
  json doc;
  doc["frequency_units"] = "angular";
  doc["modes"]["omega_cavity_1"] = c.params.omega_cavity_1;
  doc["modes"]["omega_cavity_2"] = c.params.omega_cavity_2;
  doc["modes"]["omega_b"] = c.params.omega_b;
  if (c.params.bias_field) doc["modes"]["bias_field"] = *c.params.bias_field;
  doc["damping"]["kappa_x"] = c.params.kappa_x;
  doc["damping"]["kappa_y"] = c.params.kappa_y;
  doc["damping"]["kappa_m"] = c.params.kappa_m;
  doc["damping"]["gamma_b"] = c.params.gamma_b;
  doc["couplings"]["coupling_gamma_1"] = c.params.coupling_gamma_1;
  doc["couplings"]["coupling_gamma_2"] = c.params.coupling_gamma_2;
  doc["couplings"]["g_mb"] = c.params.g_mb;
  if (c.params.g_mb_effective_override) {
    doc["couplings"]["g_mb_effective_override"]["re"] =
        c.params.g_mb_effective_override->real();
    doc["couplings"]["g_mb_effective_override"]["im"] =
        c.params.g_mb_effective_override->imag();
  }
  doc["drive"]["gyromagnetic_ratio"] = c.params.gyromagnetic_ratio;
  doc["drive"]["drive_field"] = c.params.drive_field;
  doc["drive"]["drive_detuning_mode"] =
      c.params.drive_detuning_mode == DetuningMode::SelfConsistent ? "selfconsistent"
                                                                   : "pinned";
  doc["material"]["spin_density"] = c.params.spin_density;
  doc["material"]["sphere_diameter"] = c.params.sphere_diameter;
  doc["probe"]["phi"] = c.probe.phi;
  doc["probe"]["xi"] = c.probe.xi;
  doc["probe"]["sigma"] = c.probe.sigma;
  doc["sweep"]["observable"] = observable_name(c.sweep.observable);
  doc["sweep"]["axis1"] = {{"name", axis_name(c.sweep.axis1.name)},
                           {"start", c.sweep.axis1.start},
                           {"stop", c.sweep.axis1.stop},
                           {"count", c.sweep.axis1.count}};
  if (c.sweep.axis2)
    doc["sweep"]["axis2"] = {{"name", axis_name(c.sweep.axis2->name)},
                             {"start", c.sweep.axis2->start},
                             {"stop", c.sweep.axis2->stop},
                             {"count", c.sweep.axis2->count}};
  return doc.dump(2) + "\n";
}

}  // namespace xcmm
