#pragma once

#include <iosfwd>

#include "grinlens/config.hpp"

namespace grin {

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidConfig = 2;

/// Rasterizes the lens, prints the lattice summary and optionally writes the
/// STL, mesh statistics and per-cell table.
int cmd_design(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Performance table (max frequency, bandwidth, l_uc / lambda_g) for every
/// configured unit-cell size.
int cmd_size(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Gain traces (direct or via the comparison method): knee frequency,
/// aperture efficiency, report CSVs and an SVG plot.
int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parallel-bundle focusing check through the ideal and/or clamped profile.
int cmd_trace(const RunConfig& config, std::ostream& out, std::ostream& err);

int run_command(Command command, const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace grin
