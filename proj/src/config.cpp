#include "rqm/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rqm::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

template <typename Int>
bool parse_int(const std::string& s, Int& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_list(const std::string& s, std::vector<double>& out) {
  out.clear();
  for (const auto& item : split_list(s)) {
    double v;
    if (!parse_double(item, v)) return false;
    out.push_back(v);
  }
  return !out.empty();
}

bool parse_vec3(const std::string& s, Vec3& out) {
  std::vector<double> v;
  if (!parse_list(s, v) || v.size() != 3) return false;
  out = Vec3(v[0], v[1], v[2]);
  return true;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s;
}

std::string join(const Vec3& v) { return join(std::vector<double>{v.x(), v.y(), v.z()}); }

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Defaults that differ from the global ones, applied only to keys the
/// config file leaves out.
const std::map<std::string, std::map<std::string, std::string>>& scenario_defaults() {
  static const std::map<std::string, std::map<std::string, std::string>> d = {
      {"dirac_packet",
       {{"grid.dims", "1"}, {"grid.points", "256"}, {"grid.box", "40"}, {"time.dt", "0.01"},
        {"time.steps", "1000"}, {"time.output_stride", "100"}}},
      {"maxwell_packet",
       {{"grid.dims", "3"}, {"grid.points", "32"}, {"grid.box", "16"}, {"time.dt", "0.01"},
        {"time.steps", "200"}, {"time.output_stride", "20"}}},
      {"nr_limit_scan", {{"grid.points", "16"}, {"time.dt", "1"}, {"time.steps", "100"}}},
      {"levy_leblond_check", {{"grid.box", "50.26548245743669"}}},
      {"klein_gordon_check", {{"grid.box", "50.26548245743669"}, {"time.dt", "0.01"}}},
  };
  return d;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "dispersion_table", "dirac_spectrum",   "maxwell_spectrum",   "isomorphism_certify", "dirac_packet",
      "maxwell_packet",   "nr_limit_scan",    "levy_leblond_check", "klein_gordon_check"};
  return names;
}

bool is_scenario(std::string_view name) {
  for (const auto& n : scenario_names())
    if (n == name) return true;
  return false;
}

ConfigError::ConfigError(std::vector<std::string> violations)
    : Error([&] {
        std::string msg = "invalid config:";
        for (const auto& v : violations) msg += "\n  " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "scenario",    "grid.dims",     "grid.points",        "grid.box",         "particle.mass",
      "potential.kind", "potential.value", "potential.amplitude", "potential.mode", "wave.k",
      "wave.center", "wave.width",    "wave.momenta",       "time.dt",          "time.steps",
      "time.output_stride", "seed",   "sweep.draws",        "scan.values",      "output.path",
      "output.format", "tolerance.scale"};
  return keys;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::vector<std::pair<std::string, std::string>> ScenarioConfig::echo() const {
  return {
      {"scenario", scenario},
      {"grid.dims", std::to_string(grid.dims)},
      {"grid.points", std::to_string(grid.points)},
      {"grid.box", format_double(grid.box)},
      {"particle.mass", format_double(mass)},
      {"potential.kind", potential.kind},
      {"potential.value", format_double(potential.value)},
      {"potential.amplitude", format_double(potential.amplitude)},
      {"potential.mode", std::to_string(potential.mode)},
      {"wave.k", join(wave.k)},
      {"wave.center", join(wave.center)},
      {"wave.width", format_double(wave.width)},
      {"wave.momenta", join(wave.momenta)},
      {"time.dt", format_double(time.dt)},
      {"time.steps", std::to_string(time.steps)},
      {"time.output_stride", std::to_string(time.output_stride)},
      {"seed", std::to_string(seed)},
      {"sweep.draws", std::to_string(draws)},
      {"scan.values", join(scan_values)},
      {"output.path", output_path.string()},
      {"output.format", format == OutputFormat::csv ? "csv" : "json"},
      {"tolerance.scale", format_double(tolerance_scale)},
  };
}

void check_config(const ScenarioConfig& c) {
  std::vector<std::string> v;
  if (!is_scenario(c.scenario)) v.push_back("scenario: unknown scenario '" + c.scenario + "'");
  if (c.grid.dims != 1 && c.grid.dims != 3) v.push_back("grid.dims: must be 1 or 3");
  if (!is_power_of_two(c.grid.points) || c.grid.points < 8 || c.grid.points > 256)
    v.push_back("grid.points: must be a power of two between 8 and 256");
  if (!(c.grid.box > 0.0) || !std::isfinite(c.grid.box)) v.push_back("grid.box: must be positive");
  if (!(c.mass >= 0.0) || !std::isfinite(c.mass)) v.push_back("particle.mass: must be non-negative");
  if (c.potential.kind != "zero" && c.potential.kind != "constant" && c.potential.kind != "cosine")
    v.push_back("potential.kind: must be zero, constant or cosine");
  if (!std::isfinite(c.potential.value)) v.push_back("potential.value: must be finite");
  if (!std::isfinite(c.potential.amplitude)) v.push_back("potential.amplitude: must be finite");
  if (c.potential.mode < 0) v.push_back("potential.mode: must be non-negative");
  if (!c.wave.k.allFinite()) v.push_back("wave.k: must be finite");
  if (!c.wave.center.allFinite()) v.push_back("wave.center: must be finite");
  if (!(c.wave.width > 0.0) || !std::isfinite(c.wave.width)) v.push_back("wave.width: must be positive");
  if (c.wave.momenta.empty()) v.push_back("wave.momenta: must not be empty");
  for (double p : c.wave.momenta)
    if (!(p >= 0.0) || !std::isfinite(p)) {
      v.push_back("wave.momenta: values must be non-negative");
      break;
    }
  if (!(c.time.dt > 0.0) || !std::isfinite(c.time.dt)) v.push_back("time.dt: must be positive");
  if (c.draws == 0) v.push_back("sweep.draws: must be at least 1");
  for (double s : c.scan_values)
    if (!(s > 0.0) || !std::isfinite(s)) {
      v.push_back("scan.values: values must be positive");
      break;
    }
  if (!(c.tolerance_scale > 0.0) || !std::isfinite(c.tolerance_scale))
    v.push_back("tolerance.scale: must be positive");

  if (c.scenario == "maxwell_packet" && c.grid.dims != 3) v.push_back("grid.dims: maxwell_packet requires 3");
  if ((c.scenario == "nr_limit_scan" || c.scenario == "levy_leblond_check" || c.scenario == "dirac_packet") &&
      !(c.mass > 0.0))
    v.push_back("particle.mass: " + c.scenario + " requires m > 0");
  if (c.scenario == "nr_limit_scan" && c.scan_values.size() < 2)
    v.push_back("scan.values: nr_limit_scan needs at least two values");
  if ((c.scenario == "maxwell_spectrum" || c.scenario == "maxwell_packet") && c.wave.k.norm() == 0.0)
    v.push_back("wave.k: " + c.scenario + " requires |k| > 0");
  if (!v.empty()) throw ConfigError(std::move(v));
}

ScenarioConfig validate_config(std::string_view text) {
  std::map<std::string, std::pair<std::string, int>> entries;  // key -> (value, line)
  std::vector<std::string> errors;
  const std::set<std::string> known(config_keys().begin(), config_keys().end());

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      errors.push_back("line " + std::to_string(line_no) + ": empty key");
    } else if (!known.count(key)) {
      errors.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    } else if (entries.count(key)) {
      errors.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    } else {
      entries[key] = {value, line_no};
    }
  }

  ScenarioConfig c;
  if (auto it = entries.find("scenario"); it != entries.end()) {
    c.scenario = it->second.first;
  } else {
    errors.push_back("scenario: required key missing");
  }
  if (auto d = scenario_defaults().find(c.scenario); d != scenario_defaults().end())
    for (const auto& [key, value] : d->second)
      if (!entries.count(key)) entries[key] = {value, 0};

  const auto bad = [&](const std::string& key, const std::string& what) {
    const int ln = entries[key].second;
    errors.push_back((ln ? "line " + std::to_string(ln) + ": " : std::string()) + key + ": " + what);
  };
  const auto get = [&](const std::string& key) -> const std::string* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second.first;
  };
  const auto read_double = [&](const std::string& key, double& dst) {
    if (const auto* s = get(key); s && !parse_double(*s, dst)) bad(key, "expected a finite number");
  };
  const auto read_int = [&](const std::string& key, auto& dst) {
    if (const auto* s = get(key); s && !parse_int(*s, dst)) bad(key, "expected a non-negative integer");
  };
  const auto read_vec = [&](const std::string& key, Vec3& dst) {
    if (const auto* s = get(key); s && !parse_vec3(*s, dst)) bad(key, "expected three comma-separated numbers");
  };
  const auto read_list = [&](const std::string& key, std::vector<double>& dst) {
    if (const auto* s = get(key); s && !parse_list(*s, dst)) bad(key, "expected comma-separated numbers");
  };

  read_int("grid.dims", c.grid.dims);
  read_int("grid.points", c.grid.points);
  read_double("grid.box", c.grid.box);
  read_double("particle.mass", c.mass);
  if (const auto* s = get("potential.kind")) c.potential.kind = *s;
  read_double("potential.value", c.potential.value);
  read_double("potential.amplitude", c.potential.amplitude);
  read_int("potential.mode", c.potential.mode);
  read_vec("wave.k", c.wave.k);
  read_vec("wave.center", c.wave.center);
  read_double("wave.width", c.wave.width);
  read_list("wave.momenta", c.wave.momenta);
  read_double("time.dt", c.time.dt);
  read_int("time.steps", c.time.steps);
  read_int("time.output_stride", c.time.output_stride);
  read_int("seed", c.seed);
  read_int("sweep.draws", c.draws);
  read_list("scan.values", c.scan_values);
  if (const auto* s = get("output.path")) c.output_path = *s;
  if (const auto* s = get("output.format")) {
    if (*s == "csv")
      c.format = OutputFormat::csv;
    else if (*s == "json")
      c.format = OutputFormat::json;
    else
      bad("output.format", "must be csv or json");
  }
  read_double("tolerance.scale", c.tolerance_scale);

  try {
    check_config(c);
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations())
      if (!(c.scenario.empty() && v.rfind("scenario:", 0) == 0)) errors.push_back(v);
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot read config file '" + path.string() + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  return validate_config(ss.str());
}

}  // namespace rqm::io
