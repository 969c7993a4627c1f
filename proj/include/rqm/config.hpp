#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rqm/error.hpp"
#include "rqm/field.hpp"

namespace rqm::io {

/// Closed set of runnable scenarios, in listing order.
const std::vector<std::string>& scenario_names();
bool is_scenario(std::string_view name);

enum class OutputFormat { csv, json };

/// Every violated field of a config, or a parse error with its line.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct GridConfig {
  int dims = 1;
  int points = 64;
  double box = 40.0;
};

/// zero, constant (V = value) or cosine
/// (V(r) = value + amplitude * cos(2 pi mode z / L), sampled on the grid).
struct PotentialConfig {
  std::string kind = "zero";
  double value = 0.0;
  double amplitude = 0.0;
  int mode = 1;
};

struct WaveConfig {
  Vec3 k{0.0, 0.0, 1.0};
  Vec3 center{0.0, 0.0, 0.0};
  double width = 2.0;
  std::vector<double> momenta{0.0, 0.5, 1.0, 2.0};
};

struct TimeConfig {
  double dt = 0.01;
  std::size_t steps = 100;
  std::size_t output_stride = 10;
};

struct ScenarioConfig {
  std::string scenario;
  GridConfig grid;
  double mass = 1.0;
  PotentialConfig potential;
  WaveConfig wave;
  TimeConfig time;
  std::uint64_t seed = 1;
  std::size_t draws = 100;
  std::vector<double> scan_values{0.05, 0.1};
  std::filesystem::path output_path = ".";
  OutputFormat format = OutputFormat::csv;
  double tolerance_scale = 1.0;

  /// Canonical key = value listing of every field, in documented key order.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Documented keys, in canonical order.
const std::vector<std::string>& config_keys();

/// Parses flat `dotted.key = value` text (UTF-8, `#` comments, blank lines
/// ignored), applies scenario-specific defaults for keys not given, and
/// validates. Throws ConfigError listing every problem.
ScenarioConfig validate_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Re-checks the domain rules of an already built config (used after CLI
/// overrides). Throws ConfigError.
void check_config(const ScenarioConfig& config);

/// Shortest round-trip decimal text for a double (17 significant digits).
std::string format_double(double v);

}  // namespace rqm::io
