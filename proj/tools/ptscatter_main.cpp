// ptscatter: transfer-matrix workbench for 1-D scattering by complex
// potentials.  See README.md for the config format and report schemas.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ptscatter/config.hpp"
#include "ptscatter/errors.hpp"
#include "ptscatter/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace ptscatter;

  CLI::App app{"1-D complex-potential scattering workbench"};
  app.require_subcommand(0, 0);

  std::string command_name;
  std::string config_path;
  std::string out_path;
  std::string format_name;
  double tol_root = 0.0;
  double tol_unit = 0.0;

  app.add_option("command", command_name, "one of: " + cli::command_list())->required();
  app.add_option("--config", config_path, "JSON config file")->required();
  app.add_option("--out", out_path, "output file (default: config output.path or stdout)");
  app.add_option("--format", format_name, "csv or json (overrides config)");
  app.add_option("--tol-root", tol_root, "root residual tolerance override");
  app.add_option("--tol-unit", tol_unit, "unit/zero residual tolerance override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) {  // --help
      return app.exit(err);
    }
    std::cerr << err.what() << "\n";
    return kExitValidation;
  }

  const std::optional<cli::Command> cmd = cli::parse_command(command_name);
  if (!cmd) {
    std::cerr << "unknown command '" << command_name << "'; expected one of "
              << cli::command_list() << "\n";
    return kExitValidation;
  }

  try {
    cli::RunConfig cfg = cli::parse_config_file(config_path);
    if (!format_name.empty()) {
      if (format_name == "csv") {
        cfg.format = cli::OutputFormat::Csv;
      } else if (format_name == "json") {
        cfg.format = cli::OutputFormat::Json;
      } else {
        std::cerr << "--format: expected csv or json\n";
        return kExitValidation;
      }
    }
    if (tol_root > 0.0) cfg.tolerances.root_residual = tol_root;
    if (tol_unit > 0.0) cfg.tolerances.tol_unit = tol_unit;
    if (!out_path.empty()) cfg.output_path = out_path;

    const std::string report = cli::run_command(*cmd, cfg);

    if (cfg.output_path) {
      std::ofstream out(*cfg.output_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot open output file '" << *cfg.output_path << "'\n";
        return kExitValidation;
      }
      out << report;
    } else {
      std::cout << report;
    }
    return kExitOk;
  } catch (const cli::ConfigError& err) {
    std::cerr << err.what() << "\n";
    return kExitValidation;
  } catch (const ContractViolation& err) {
    std::cerr << err.what() << "\n";
    return kExitValidation;
  } catch (const IntegrationFailure& err) {
    std::cerr << err.what() << " (k = " << err.k.k << ", x = " << err.x_reached
              << ", h = " << err.last_step << ", steps = " << err.steps_taken << ")\n";
    return kExitNumerical;
  } catch (const SpectralSingularityError& err) {
    std::cerr << err.what() << "\n";
    return kExitNumerical;
  } catch (const SearchFailure& err) {
    std::cerr << err.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& err) {
    std::cerr << "unexpected error: " << err.what() << "\n";
    return kExitNumerical;
  }
}
