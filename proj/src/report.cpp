#include "rqm/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace rqm::io {

namespace {

using ojson = nlohmann::ordered_json;

ojson cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> ojson {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_double(v);
        }
        return v;
      },
      cell);
}

ojson number_json(double v) { return std::isfinite(v) ? ojson(v) : ojson(format_double(v)); }

const char* kind_name(Check::Kind k) { return k == Check::Kind::at_most ? "at_most" : "near"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw InvalidArgument("table '" + name + "': row has " + std::to_string(row.size()) + " cells, expected " +
                          std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

Check Check::at_most(std::string name, double value, double tolerance) {
  return {std::move(name), Kind::at_most, value, 0.0, tolerance, value <= tolerance};
}

Check Check::near(std::string name, double value, double target, double relative_tolerance) {
  const bool ok = std::abs(value - target) <= relative_tolerance * std::abs(target);
  return {std::move(name), Kind::near, value, target, relative_tolerance, ok};
}

bool RunReport::passed() const {
  return error.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

double RunReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks)
    if (c.kind == Check::Kind::at_most) m = std::max(m, c.value);
  return m;
}

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>)
          return format_double(v);
        else if constexpr (std::is_same_v<T, std::string>)
          return v;
        else
          return std::to_string(v);
      },
      cell);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
    out += '\n';
  }
  return out;
}

std::string to_json(const RunReport& report, bool include_wall_time) {
  ojson doc;
  doc["scenario"] = report.config.scenario;
  ojson cfg = ojson::object();
  for (const auto& [key, value] : report.config.echo()) cfg[key] = value;
  doc["config"] = cfg;

  ojson tables = ojson::array();
  for (const auto& t : report.tables) {
    ojson rows = ojson::array();
    for (const auto& r : t.rows) {
      ojson row = ojson::array();
      for (const auto& c : r) row.push_back(cell_json(c));
      rows.push_back(row);
    }
    tables.push_back(ojson{{"name", t.name}, {"columns", t.columns}, {"rows", rows}});
  }
  doc["tables"] = tables;

  ojson checks = ojson::array();
  for (const auto& c : report.checks)
    checks.push_back(ojson{{"name", c.name},
                           {"kind", kind_name(c.kind)},
                           {"value", number_json(c.value)},
                           {"target", number_json(c.target)},
                           {"tolerance", number_json(c.tolerance)},
                           {"passed", c.passed}});
  doc["checks"] = checks;

  ojson summary;
  summary["passed"] = report.passed();
  summary["max_residual"] = number_json(report.max_residual());
  summary["error"] = report.error;
  if (include_wall_time) summary["wall_seconds"] = report.wall_seconds;
  doc["summary"] = summary;
  return doc.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_report(const RunReport& report, const std::filesystem::path& dir,
                                                OutputFormat format) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const std::string& base = report.config.scenario;
  if (format == OutputFormat::json) {
    written.push_back(dir / (base + ".json"));
    write_text(written.back(), to_json(report));
    return written;
  }
  for (const auto& t : report.tables) {
    written.push_back(dir / (base + "_" + t.name + ".csv"));
    write_text(written.back(), to_csv(t));
  }
  Table checks{"checks", {"name", "kind", "value", "target", "tolerance", "passed"}, {}};
  for (const auto& c : report.checks)
    checks.add_row({c.name, std::string(kind_name(c.kind)), c.value, c.target, c.tolerance,
                    std::int64_t{c.passed ? 1 : 0}});
  written.push_back(dir / (base + "_checks.csv"));
  write_text(written.back(), to_csv(checks));
  return written;
}

}  // namespace rqm::io
