#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "rqm/config.hpp"

namespace rqm::io {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Named table with a fixed column order; one CSV file per table.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws InvalidArgument when the row width does not match the columns.
  void add_row(std::vector<Cell> row);
};

/// One pass/fail measurement against a tolerance. `at_most` passes when
/// value <= tolerance; `near` passes when |value - target| <= tolerance * |target|.
struct Check {
  enum class Kind { at_most, near };

  std::string name;
  Kind kind = Kind::at_most;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool passed = false;

  static Check at_most(std::string name, double value, double tolerance);
  static Check near(std::string name, double value, double target, double relative_tolerance);
};

struct RunReport {
  ScenarioConfig config;
  std::vector<Table> tables;
  std::vector<Check> checks;
  /// Set when the scenario aborted on a numerical error.
  std::string error;
  double wall_seconds = 0.0;

  bool passed() const;
  /// Largest value among at_most checks (0 when there are none).
  double max_residual() const;
};

std::string format_cell(const Cell& cell);

/// Header row plus one line per row, LF endings, doubles via format_double.
std::string to_csv(const Table& table);

/// Single JSON document: scenario, config, tables, checks, summary.
/// Wall time is included only when `include_wall_time` is set.
std::string to_json(const RunReport& report, bool include_wall_time = true);

/// Writes `<scenario>_<table>.csv` for each table plus `<scenario>_checks.csv`,
/// or a single `<scenario>.json`. Returns the paths written.
std::vector<std::filesystem::path> write_report(const RunReport& report, const std::filesystem::path& dir,
                                                OutputFormat format);

}  // namespace rqm::io
