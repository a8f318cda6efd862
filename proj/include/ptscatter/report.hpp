#ifndef PTSCATTER_REPORT_HPP
#define PTSCATTER_REPORT_HPP

#include <string>

#include "ptscatter/config.hpp"

namespace ptscatter::cli {

/// Formats a real with 17 significant digits; non-finite values become the
/// literal token "divergent".
std::string format_double(double v);

/// RFC-style CSV quoting: fields containing separators, quotes or newlines
/// are wrapped in double quotes with inner quotes doubled.
std::string csv_escape(const std::string& field);

/// Runs one command against a validated config and returns the serialized
/// report (CSV or JSON per config/default).  Output is deterministic:
/// identical config and version give byte-identical bytes.
/// Numerical failures (integration, search) propagate as exceptions.
std::string run_command(Command cmd, const RunConfig& cfg);

/// Worker-pool width used for spectrum sweeps (bounded, machine dependent;
/// the assembled output order is ascending k and thread-count independent).
unsigned spectrum_pool_width();

}  // namespace ptscatter::cli

#endif
