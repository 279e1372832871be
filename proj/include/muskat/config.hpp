#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "muskat/field.hpp"
#include "muskat/profiles.hpp"
#include "muskat/stepper.hpp"
#include "muskat/util.hpp"

namespace muskat {

// Simulation configuration; see README for the config-file schema and units.
struct SimConfig {
  // [grid]
  int n = 128;
  double L = 2.0 * std::numbers::pi;
  // [physics]
  double rho = 2.0 * std::numbers::pi;  // density jump (stable: > 0)
  double eps = 0.0;                     // regularization strength
  // [time]
  Scheme scheme = Scheme::rk4;
  double cfl = 0.25;
  double t_final = 1.0;
  double report_interval = 0.0;  // 0: t_final/50
  // [quadrature]
  int quad_radial = 48;
  int quad_angular = 32;
  double quad_r_min = 0.0;  // 0: quarter-cell policy L/(4n)
  // [initial]
  std::string profile = "zero";  // or "file"
  ProfileParams profile_params;
  std::string initial_file;
  // [output]
  std::string output_dir = "out";
  // [run]
  uint64_t seed = 7;
  double theorem_constant = 0.125;
  bool nonlinear = true;
};

inline void validate_config(const SimConfig& c) {
  auto fail = [](const std::string& key, const std::string& why) {
    throw std::invalid_argument("config: key '" + key + "' " + why);
  };
  if (c.n < 8 || c.n > 2048 || (c.n & (c.n - 1)) != 0)
    fail("grid.n", "must be a power of two in [8, 2048]");
  if (!(c.L > 0.0) || !std::isfinite(c.L)) fail("grid.L", "must be positive");
  if (!(c.rho > 0.0)) fail("physics.rho", "must be positive (stable regime)");
  if (c.eps < 0.0 || !std::isfinite(c.eps)) fail("physics.eps", "must be >= 0");
  if (!(c.cfl > 0.0) || c.cfl > 4.0) fail("time.cfl", "must lie in (0, 4]");
  if (!(c.t_final > 0.0)) fail("time.t_final", "must be positive");
  if (c.report_interval < 0.0) fail("time.report_interval", "must be >= 0");
  if (c.quad_radial < 6 || c.quad_radial > 4096)
    fail("quadrature.radial", "must lie in [6, 4096]");
  if (c.quad_angular < 4 || c.quad_angular > 1024 || c.quad_angular % 4 != 0)
    fail("quadrature.angular", "must be a multiple of 4 in [4, 1024]");
  if (c.quad_r_min < 0.0 || c.quad_r_min >= c.L / 2.0)
    fail("quadrature.r_min", "must lie in [0, L/2)");
  if (!(c.theorem_constant > 0.0))
    fail("run.theorem_constant", "must be positive");
  if (c.profile.empty()) fail("initial.profile", "must be set");
  if (c.profile == "file" && c.initial_file.empty())
    fail("initial.file", "must name a snapshot when profile = file");
}

inline double config_report_interval(const SimConfig& c) {
  return c.report_interval > 0.0 ? c.report_interval : c.t_final / 50.0;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing junk");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key +
                                "' has a malformed numeric value '" + v + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("config: key '" + key +
                              "' expects true/false, got '" + v + "'");
}

}  // namespace detail

// Strict key = value parser over [section] blocks; '#' and ';' start
// comments. Unknown sections or keys are rejected by name, silently ignoring
// a typo in a quadrature knob is not an option here.
inline SimConfig parse_config(std::istream& in) {
  SimConfig c;
  std::string line, section;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section != "grid" && section != "physics" && section != "time" &&
          section != "quadrature" && section != "initial" &&
          section != "output" && section != "run")
        fail("unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    const std::string full = section + "." + key;
    if (section == "grid") {
      if (key == "n") c.n = static_cast<int>(detail::parse_number(full, val));
      else if (key == "L") c.L = detail::parse_number(full, val);
      else fail("unknown key '" + full + "'");
    } else if (section == "physics") {
      if (key == "rho") c.rho = detail::parse_number(full, val);
      else if (key == "eps") c.eps = detail::parse_number(full, val);
      else fail("unknown key '" + full + "'");
    } else if (section == "time") {
      if (key == "scheme") {
        if (val == "rk4") c.scheme = Scheme::rk4;
        else if (val == "ifrk4") c.scheme = Scheme::ifrk4;
        else fail("time.scheme must be rk4 or ifrk4");
      } else if (key == "cfl") c.cfl = detail::parse_number(full, val);
      else if (key == "t_final") c.t_final = detail::parse_number(full, val);
      else if (key == "report_interval")
        c.report_interval = detail::parse_number(full, val);
      else fail("unknown key '" + full + "'");
    } else if (section == "quadrature") {
      if (key == "radial")
        c.quad_radial = static_cast<int>(detail::parse_number(full, val));
      else if (key == "angular")
        c.quad_angular = static_cast<int>(detail::parse_number(full, val));
      else if (key == "r_min") c.quad_r_min = detail::parse_number(full, val);
      else fail("unknown key '" + full + "'");
    } else if (section == "initial") {
      if (key == "profile") c.profile = val;
      else if (key == "file") c.initial_file = val;
      else
        c.profile_params[key] = detail::parse_number(full, val);
    } else if (section == "output") {
      if (key == "directory") c.output_dir = val;
      else fail("unknown key '" + full + "'");
    } else if (section == "run") {
      if (key == "seed")
        c.seed = static_cast<uint64_t>(detail::parse_number(full, val));
      else if (key == "theorem_constant")
        c.theorem_constant = detail::parse_number(full, val);
      else if (key == "nonlinear") c.nonlinear = detail::parse_bool(full, val);
      else fail("unknown key '" + full + "'");
    } else {
      fail("key '" + key + "' appears before any [section]");
    }
  }
  validate_config(c);
  return c;
}

inline SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  try {
    return parse_config(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

inline std::string serialize_config(const SimConfig& c) {
  std::ostringstream o;
  o << "[grid]\n"
    << "n = " << c.n << "\n"
    << "L = " << format17(c.L) << "\n\n"
    << "[physics]\n"
    << "rho = " << format17(c.rho) << "\n"
    << "eps = " << format17(c.eps) << "\n\n"
    << "[time]\n"
    << "scheme = " << scheme_name(c.scheme) << "\n"
    << "cfl = " << format17(c.cfl) << "\n"
    << "t_final = " << format17(c.t_final) << "\n"
    << "report_interval = " << format17(c.report_interval) << "\n\n"
    << "[quadrature]\n"
    << "radial = " << c.quad_radial << "\n"
    << "angular = " << c.quad_angular << "\n"
    << "r_min = " << format17(c.quad_r_min) << "\n\n"
    << "[initial]\n"
    << "profile = " << c.profile << "\n";
  if (!c.initial_file.empty()) o << "file = " << c.initial_file << "\n";
  for (const auto& [k, v] : c.profile_params)
    o << k << " = " << format17(v) << "\n";
  o << "\n[output]\n"
    << "directory = " << c.output_dir << "\n\n"
    << "[run]\n"
    << "seed = " << c.seed << "\n"
    << "theorem_constant = " << format17(c.theorem_constant) << "\n"
    << "nonlinear = " << (c.nonlinear ? "true" : "false") << "\n";
  return o.str();
}

// FNV-1a of the canonical serialization; stamped into snapshots and ledgers.
inline uint64_t config_hash(const SimConfig& c) {
  const std::string s = serialize_config(c);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace muskat
