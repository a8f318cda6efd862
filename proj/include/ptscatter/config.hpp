#ifndef PTSCATTER_CONFIG_HPP
#define PTSCATTER_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "ptscatter/potential.hpp"
#include "ptscatter/spectral.hpp"

namespace ptscatter::cli {

/// Config / command-line validation problem; maps to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class OutputFormat { Csv, Json };

struct Tolerances {
  double integration = 1e-10;
  double tol_unit = 1e-6;
  double tol_nonzero = 1e-3;
  double root_residual = 1e-8;
};

struct KRange {
  double min = 1.0;
  double max = 1.0;
  std::size_t n = 1;
};

/// Fully validated run configuration.  The potential comes from exactly one
/// source: inline segments, an analytic family, or a sampled-profile file.
struct RunConfig {
  PotentialSpec potential = PotentialSpec::piecewise({});
  std::optional<KRange> k_range;
  std::optional<SearchBox> bound_box;
  Tolerances tolerances;
  std::optional<OutputFormat> format;  // per-command default when absent
  std::optional<std::string> output_path;
};

/// Parses and validates a JSON config document.  Unknown keys, contradictory
/// potential sources and non-positive ranges are rejected with the offending
/// location in the message.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

enum class Command {
  Spectrum,
  Singularities,
  BoundStates,
  Invisibility,
  Symmetry,
  Geometry,
  Compose,
};

std::optional<Command> parse_command(const std::string& name);
std::string command_list();

}  // namespace ptscatter::cli

#endif
