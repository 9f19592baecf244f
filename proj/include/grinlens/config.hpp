#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grinlens/gyroid.hpp"
#include "grinlens/profile.hpp"
#include "grinlens/sizing.hpp"

namespace grin {

/// Environment variable naming the default directory for relative outputs.
inline constexpr const char* kOutputDirEnv = "GRINLENS_OUTPUT_DIR";

/// Every knob of a run. Lengths are in millimetres and frequencies in GHz,
/// as typed by the user; the accessors convert to SI.
struct RunConfig {
    double diameter_mm = 100.0;
    double eps_host = 2.8;
    double eps_min = 1.2;
    std::vector<double> l_uc_mm{10.0};
    MixingKind mixing = MixingKind::VolumeAverage;
    int voxels_per_cell = 64;

    double ratio_limit = 1.4;
    double band_start_ghz = 18.0;
    double band_ceiling_ghz = 40.0;
    double report_step_ghz = 1.0;

    double drop_db = 0.5;
    int confirm_points = 3;

    std::uint64_t seed = 0;
    std::size_t mc_samples = kDefaultFillSamples;
    unsigned workers = 0;

    std::string trace_profile = "both";  // ideal | clamped | both
    double trace_step_divisor = 2000.0;  // step = R / divisor
    std::vector<double> trace_offsets{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};  // fractions of R

    std::string output_dir;
    std::string stl;
    std::string mesh_stats;
    std::string cells;
    std::string report;
    std::string efficiency;
    std::string plot;
    std::string rays;
    std::vector<std::string> gain;
    std::vector<std::string> aut;
    std::string ref_power;
    std::string ref_gain;

    [[nodiscard]] LensSpec lens_spec(std::size_t cell_index = 0) const;
    [[nodiscard]] MixingModel mixing_model() const { return {mixing, eps_host}; }
    [[nodiscard]] SizingParams sizing_params() const;

    /// Relative paths resolve against output_dir, else $GRINLENS_OUTPUT_DIR.
    [[nodiscard]] std::filesystem::path resolve_output(const std::string& path) const;
    /// Directory for default-named outputs; empty when none was configured.
    [[nodiscard]] std::filesystem::path default_output_dir() const;
};

using Setting = std::pair<std::string, std::string>;

/// Parses `key = value` lines; `#` starts a comment. Keys are returned in
/// file order with their line numbers recorded in ParseError on failure.
std::vector<Setting> parse_config_text(std::string_view text, std::string_view source);

std::vector<Setting> read_config_file(const std::filesystem::path& path);

/// Applies settings in order (later wins). Unknown keys and malformed values
/// are appended to `problems` rather than thrown.
void apply_settings(RunConfig& config, const std::vector<Setting>& settings, std::vector<std::string>& problems);

/// Keys accepted by apply_settings.
const std::vector<std::string>& config_keys();

enum class Command { Design, Size, Analyze, Trace };

/// Field-level problems relevant to `command`; empty when valid.
std::vector<std::string> validate(const RunConfig& config, Command command);

}  // namespace grin
