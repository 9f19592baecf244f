#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grinlens/sizing.hpp"

namespace grin {

struct GainPoint {
    double frequency_hz = 0.0;
    double gain_dbi = 0.0;
};

/// Gain versus frequency for one antenna.
struct GainTrace {
    std::vector<GainPoint> points;
    std::string label;
    double band_start_hz = 0.0;
    double band_stop_hz = 0.0;

    /// Band defaults to the span of the data.
    static GainTrace make(std::vector<GainPoint> points, std::string label,
                          std::optional<std::pair<double, double>> band = std::nullopt);

    /// Strictly increasing frequencies inside the band, at least 3 points.
    void validate() const;
};

struct PowerPoint {
    double frequency_hz = 0.0;
    double power_db = 0.0;
};

/// Relative received power from the range, before gain transfer.
struct RawPowerTrace {
    std::vector<PowerPoint> points;
    std::string label;

    void validate() const;
};

/// Gain-transfer (comparison) method: G_aut = G_ref + P_aut - P_ref in dB,
/// on an identical frequency grid.
GainTrace comparison_gain(const RawPowerTrace& aut, const RawPowerTrace& ref, const GainTrace& ref_gain);

/// Directivity of a uniformly illuminated circular aperture, (pi D / lambda)^2, in dBi.
double aperture_gain_ceiling(double diameter_m, double frequency_hz);

/// First frequency where the running gain maximum exceeds each of the next
/// confirm_points samples by at least drop_db; exceeds_band if gain never
/// turns down inside the trace.
FrequencyLimit detect_f_max(const GainTrace& trace, double drop_db = 0.5, std::size_t confirm_points = 3);

struct EfficiencyPoint {
    double frequency_hz = 0.0;
    double efficiency = 0.0;
};

/// Linear ratio of measured gain to the aperture ceiling.
std::vector<EfficiencyPoint> efficiency(const GainTrace& trace, double diameter_m);

/// Header frequency_ghz,gain_dbi; errors carry line numbers.
GainTrace read_gain_csv(std::istream& in, std::string label, std::string_view source,
                        std::optional<std::pair<double, double>> band = std::nullopt);

/// Header frequency_ghz,power_db.
RawPowerTrace read_power_csv(std::istream& in, std::string label, std::string_view source);

void write_gain_csv(const GainTrace& trace, std::ostream& out);

}  // namespace grin
