// Command-line front end: run, sweep, verify, preset.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cavity/config.hpp"
#include "cavity/scenario.hpp"
#include "cavity/verify.hpp"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw cavity::ConfigError("bad sweep value '" + item + "'");
    }
    values.push_back(v);
  }
  return values;
}

void report_files(const cavity::ScenarioResult& result) {
  for (const auto& f : result.files) std::cout << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cavity-QED entanglement simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", axis, values, preset_name;
  bool svg = false;
  double verify_dt = cavity::VerifyOptions{}.dt;

  auto* run = app.add_subcommand("run", "Integrate one configuration");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_flag("--svg", svg, "Also write an SVG plot");

  auto* sweep = app.add_subcommand("sweep", "Run one configuration over a list of values");
  sweep->add_option("--config", config_path, "Config file")->required();
  sweep->add_option("--axis", axis, "Numeric config key to vary")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--out", out_dir, "Output directory");

  auto* verify = app.add_subcommand("verify", "Run the built-in oracle checks");
  verify->add_option("--dt", verify_dt, "Step for the accuracy checks");

  auto* preset = app.add_subcommand("preset", "Write a figure preset");
  preset->add_option("name", preset_name, "fig1..fig5")->required();
  preset->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) {
      cavity::RunConfig cfg = cavity::load_config(config_path);
      if (svg) cfg.emit_svg = true;
      report_files(cavity::run_scenario(cfg, out_dir));
    } else if (*sweep) {
      const cavity::RunConfig cfg = cavity::load_config(config_path);
      const auto rows = cavity::run_sweep(cfg, axis, parse_values(values), out_dir);
      std::cout << cavity::sweep_summary_csv(rows);
    } else if (*verify) {
      cavity::VerifyOptions options;
      options.dt = verify_dt;
      const cavity::VerifyReport report = cavity::run_verify(options);
      std::cout << report.table();
      return report.passed() ? kOk : kVerifyFailed;
    } else if (*preset) {
      for (const auto& cfg : cavity::preset(preset_name)) report_files(cavity::run_scenario(cfg, out_dir));
    }
  } catch (const cavity::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const cavity::NonFiniteState& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const cavity::ZeroStateError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kOk;
}
