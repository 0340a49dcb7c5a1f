// Experiment runner: generate synthetic streams, run protocols, aggregate reports.

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "actstream/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"actstream: streaming malware-detection experiments"};
  app.require_subcommand(1);

  std::string generate_config;
  std::string generate_output;
  auto* generate = app.add_subcommand("generate", "Write a synthetic drifting dataset");
  generate->add_option("config", generate_config, "Generator config (key = value)")->required();
  generate->add_option("-o,--output", generate_output, "Dataset path (default: standard output)");

  std::string run_config;
  auto* run = app.add_subcommand("run", "Run one protocol over a dataset");
  run->add_option("config", run_config, "Experiment config (key = value)")->required();

  std::vector<std::string> report_inputs;
  std::string report_output;
  auto* report = app.add_subcommand("report", "Aggregate series CSVs into one comparison table");
  report->add_option("csv", report_inputs, "Series CSV files")->required();
  report->add_option("-o,--output", report_output, "Table path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : actstream::exit_code::config;
  }

  auto optional_path = [](const std::string& s) -> std::optional<std::filesystem::path> {
    if (s.empty()) return std::nullopt;
    return std::filesystem::path(s);
  };

  if (*generate) return actstream::cmd_generate(generate_config, optional_path(generate_output), std::cout, std::cerr);
  if (*run) return actstream::cmd_run(run_config, std::cout, std::cerr);
  std::vector<std::filesystem::path> inputs(report_inputs.begin(), report_inputs.end());
  return actstream::cmd_report(inputs, optional_path(report_output), std::cout, std::cerr);
}
