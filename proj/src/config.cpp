#include "debeam/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace debeam::config {

using scenario::ElecBC;
using scenario::Kind;
using scenario::ScenarioConfig;

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* elec_bc_name(ElecBC b) {
  switch (b) {
    case ElecBC::All:
      return "all";
    case ElecBC::FixedEnd:
      return "fixed_end";
    case ElecBC::None:
      return "none";
  }
  return "?";
}

ElecBC elec_bc_from_name(const std::string& v) {
  if (v == "all") return ElecBC::All;
  if (v == "fixed_end") return ElecBC::FixedEnd;
  if (v == "none") return ElecBC::None;
  throw ConfigError("electrodes.elec_bc", "expected all|fixed_end|none, got '" + v + "'");
}

}  // namespace

ScenarioConfig parse(const std::string& text) {
  ScenarioConfig c;
  bool kind_seen = false;
  std::string section;
  std::istringstream in(text);
  std::string line;
  // first pass only fetches the scenario kind so that its defaults apply
  while (std::getline(in, line)) {
    std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    if (t.front() == '[') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) continue;
    if (trim(t.substr(0, eq)) == "kind") {
      c = scenario::default_config(scenario::kind_from_name(trim(t.substr(eq + 1))));
      kind_seen = true;
      break;
    }
  }
  if (!kind_seen) throw ConfigError("scenario.kind", "missing 'kind' entry");

  in.clear();
  in.seekg(0);
  while (std::getline(in, line)) {
    std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("config", "malformed section '" + t + "'");
      section = t.substr(1, t.size() - 2);
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("config", "malformed line '" + t + "'");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    std::string full = section + "." + key;

    if (full == "scenario.kind") {
      // handled in the first pass
    } else if (full == "geometry.length_mm") {
      c.length_mm = parse_double(full, val);
    } else if (full == "geometry.side_mm") {
      c.side_mm = parse_double(full, val);
    } else if (full == "geometry.elements") {
      c.elements = parse_int(full, val);
    } else if (full == "material.rho_g_mm3") {
      c.material.rho = parse_double(full, val);
    } else if (full == "material.lambda_mpa") {
      c.material.lambda = parse_double(full, val);
    } else if (full == "material.mu_mpa") {
      c.material.mu = parse_double(full, val);
    } else if (full == "material.c1_n_v2") {
      c.material.c1 = parse_double(full, val);
    } else if (full == "material.c2_n_v2") {
      c.material.c2 = parse_double(full, val);
    } else if (full == "material.eps0_c_vm") {
      c.material.eps0 = parse_double(full, val);
    } else if (full == "material.eta_mpa_ms") {
      c.material.eta = parse_double(full, val);
    } else if (full == "voltage.phi_o_v") {
      c.phi_o_v = parse_double(full, val);
    } else if (full == "voltage.alpha_v_mm") {
      c.alpha_v_mm = parse_double(full, val);
    } else if (full == "voltage.beta_v_mm") {
      c.beta_v_mm = parse_double(full, val);
    } else if (full == "voltage.ramp_ms") {
      c.ramp_ms = parse_double(full, val);
    } else if (full == "electrodes.elec_bc") {
      c.elec_bc = elec_bc_from_name(val);
    } else if (full == "time.dt_ms") {
      c.dt_ms = parse_double(full, val);
    } else if (full == "time.t_end_ms") {
      c.t_end_ms = parse_double(full, val);
    } else if (full == "solver.energy_path") {
      if (val == "analytic") {
        c.energy_path = materials::EnergyPath::Analytic;
      } else if (val == "quadrature") {
        c.energy_path = materials::EnergyPath::Quadrature;
      } else {
        throw ConfigError(full, "expected analytic|quadrature, got '" + val + "'");
      }
    } else if (full == "solver.quad_order") {
      c.quad_order = parse_int(full, val);
    } else if (full == "solver.newton_tol") {
      c.newton_tol = parse_double(full, val);
    } else if (full == "solver.max_iterations") {
      c.max_iterations = parse_int(full, val);
    } else if (full == "output.dir") {
      c.out_dir = val;
    } else if (full == "output.stride") {
      c.stride = parse_int(full, val);
    } else {
      throw ConfigError(full, "unknown configuration key");
    }
  }
  return c;
}

ScenarioConfig load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string serialize(const ScenarioConfig& c) {
  std::ostringstream o;
  o << "[scenario]\n";
  o << "kind = " << scenario::kind_name(c.kind) << "\n";
  o << "\n[geometry]\n";
  o << "length_mm = " << fmt(c.length_mm) << "\n";
  o << "side_mm = " << fmt(c.side_mm) << "\n";
  o << "elements = " << c.elements << "\n";
  o << "\n[material]\n";
  o << "rho_g_mm3 = " << fmt(c.material.rho) << "\n";
  o << "lambda_mpa = " << fmt(c.material.lambda) << "\n";
  o << "mu_mpa = " << fmt(c.material.mu) << "\n";
  o << "c1_n_v2 = " << fmt(c.material.c1) << "\n";
  o << "c2_n_v2 = " << fmt(c.material.c2) << "\n";
  o << "eps0_c_vm = " << fmt(c.material.eps0) << "\n";
  o << "eta_mpa_ms = " << fmt(c.material.eta) << "\n";
  o << "\n[voltage]\n";
  o << "phi_o_v = " << fmt(c.phi_o_v) << "\n";
  o << "alpha_v_mm = " << fmt(c.alpha_v_mm) << "\n";
  o << "beta_v_mm = " << fmt(c.beta_v_mm) << "\n";
  o << "ramp_ms = " << fmt(c.ramp_ms) << "\n";
  o << "\n[electrodes]\n";
  o << "elec_bc = " << elec_bc_name(c.elec_bc) << "\n";
  o << "\n[time]\n";
  o << "dt_ms = " << fmt(c.dt_ms) << "\n";
  o << "t_end_ms = " << fmt(c.t_end_ms) << "\n";
  o << "\n[solver]\n";
  o << "energy_path = "
    << (c.energy_path == materials::EnergyPath::Analytic ? "analytic" : "quadrature") << "\n";
  o << "quad_order = " << c.quad_order << "\n";
  o << "newton_tol = " << fmt(c.newton_tol) << "\n";
  o << "max_iterations = " << c.max_iterations << "\n";
  o << "\n[output]\n";
  o << "dir = " << c.out_dir << "\n";
  o << "stride = " << c.stride << "\n";
  return o.str();
}

}  // namespace debeam::config
