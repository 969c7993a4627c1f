// rqm: run, validate and list verification scenarios.
//
// Exit status: 0 all checks passed, 1 a check failed, 2 invalid config or
// usage, 3 numerical error during the run.

#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "rqm/scenarios.hpp"

namespace {

int print_config_error(const rqm::io::ConfigError& e) {
  std::cerr << e.what() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic wave mechanics: spectral simulation and verification scenarios"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> output_dir, format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance_scale;

  auto* run = app.add_subcommand("run", "Run a scenario and write its data files");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--output-dir", output_dir, "Directory for data files (overrides output.path)");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--seed", seed, "Random seed (overrides seed)");
  run->add_option("--tolerance-scale", tolerance_scale, "Multiplies every pass/fail tolerance");

  auto* validate = app.add_subcommand("validate", "Check a config and print the populated values");
  validate->add_option("config", config_path, "Config file")->required();

  app.add_subcommand("list-scenarios", "Print the scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  using namespace rqm::io;
  if (app.got_subcommand("list-scenarios")) {
    for (const auto& n : scenario_names()) std::cout << n << "\n";
    return 0;
  }

  ScenarioConfig cfg;
  try {
    cfg = load_config(config_path);
    if (validate->parsed()) {
      for (const auto& [key, value] : cfg.echo()) std::cout << key << " = " << value << "\n";
      return 0;
    }
    if (output_dir) cfg.output_path = *output_dir;
    if (format) cfg.format = *format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (seed) cfg.seed = *seed;
    if (tolerance_scale) cfg.tolerance_scale = *tolerance_scale;
    check_config(cfg);
  } catch (const ConfigError& e) {
    return print_config_error(e);
  }

  const RunReport report = run_scenario(cfg);
  try {
    for (const auto& p : write_report(report, cfg.output_path, cfg.format)) std::cout << "wrote " << p.string() << "\n";
  } catch (const rqm::Error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  for (const auto& c : report.checks)
    std::printf("%-36s %s  value=%s tolerance=%s\n", c.name.c_str(), c.passed ? "PASS" : "FAIL",
                format_double(c.value).c_str(), format_double(c.tolerance).c_str());
  std::printf("wall time %.3f s\n", report.wall_seconds);
  if (!report.error.empty()) {
    std::cerr << "error: " << report.error << "\n";
    return 3;
  }
  return report.passed() ? 0 : 1;
}
