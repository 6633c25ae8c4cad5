#include <CLI11.hpp>
#include <iostream>

#include "fopa/errors.hpp"
#include "fopa/workbench/config.hpp"
#include "fopa/workbench/presets.hpp"
#include "fopa/workbench/sweep.hpp"
#include "fopa/workbench/table.hpp"
#include "fopa/workbench/verify.hpp"

namespace wb = fopa::workbench;

int main(int argc, char** argv) {
  CLI::App app{"Nondegenerate fiber parametric amplifier workbench"};
  app.set_version_flag("--version", std::string(wb::kToolVersion));
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: config value or 1)")->check(CLI::PositiveNumber);

  std::string config, out, preset, suite = "all";
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a config file");
  sweep->add_option("--config", config, "Config file")->required();
  sweep->add_option("--out", out, "Output CSV")->required();

  auto* pre = app.add_subcommand("preset", "Reproduce a figure preset");
  pre->add_option("--id", preset, "fig1..fig5")->required();
  pre->add_option("--out", out, "Output CSV")->required();

  auto* ver = app.add_subcommand("verify", "Run the independent oracle suites");
  ver->add_option("--suite", suite, "commutators, series_vs_closed, optima_bruteforce, quadrature, degenerate_limits, all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      wb::emit_csv(wb::run_sweep(wb::load_config(config), threads), out);
    } else if (*pre) {
      wb::emit_csv(wb::run_preset(wb::parse_preset_id(preset), threads > 0 ? threads : 1), out);
    } else if (*ver) {
      const wb::VerifyReport report = wb::verify(wb::parse_suite(suite), threads > 0 ? threads : 1);
      wb::print_report(report, std::cout);
      return report.pass() ? 0 : 2;
    }
  } catch (const fopa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.category() == fopa::Error::Category::Validation ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
