#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace grin {

/// A frequency that may only be known as a lower bound, e.g. "> 40 GHz"
/// when the limit lies past the top of the measured band.
struct FrequencyLimit {
    double hz = 0.0;
    bool exceeds_band = false;
};

/// Wavelength inside the host dielectric: (c / f) / sqrt(eps_host).
double guided_wavelength(double frequency_hz, double eps_host);

/// Unit-cell size in guided wavelengths.
double cell_ratio(double cell_m, double frequency_hz, double eps_host);

/// Highest usable frequency of a lattice whose cell spans ratio_limit guided
/// wavelengths. The default 1.4 is two sub-cells of 0.7 guided wavelengths.
double predict_f_max(double cell_m, double eps_host, double ratio_limit = 1.4);

/// Largest cell that still works at f_required; inverse of predict_f_max.
double max_cell_for_frequency(double f_required_hz, double eps_host, double ratio_limit = 1.4);

struct BandwidthResult {
    double hz = 0.0;
    bool exceeds_band = false;  // true bandwidth is larger than hz
    bool below_band = false;    // f_max under band start; hz is 0
};

/// Usable span from band start up to f_max.
BandwidthResult bandwidth(const FrequencyLimit& f_max, double band_start_hz = 18e9, double band_ceiling_hz = 40e9);

struct SizingParams {
    double eps_host = 2.8;
    double ratio_limit = 1.4;
    double band_start_hz = 18e9;
    double band_ceiling_hz = 40e9;
    /// Reported limits are floored to this frequency grid (0 disables).
    double report_step_hz = 1e9;
};

/// One row of the lens performance table.
struct SizingReport {
    double cell_m = 0.0;
    double f_predicted_hz = 0.0;
    FrequencyLimit f_max;
    BandwidthResult bandwidth;
    double lambda_m = 0.0;  // free-space wavelength at the quoted frequency
    double lambda_g = 0.0;
    double ratio = 0.0;
};

/// Predicts f_max, quantizes it to the reporting grid, and evaluates the
/// wavelength ratio there. Limits past the band ceiling are reported as
/// "> ceiling" and their ratio is taken at the ceiling.
SizingReport size_cell(double cell_m, const SizingParams& params);

std::vector<SizingReport> size_cells(std::span<const double> cells_m, const SizingParams& params);

/// Columns l_uc_mm,f_max_ghz,bandwidth_ghz,ratio.
void write_sizing_csv(std::span<const SizingReport> rows, std::ostream& out);

/// Aligned plain-text table.
void write_sizing_table(std::span<const SizingReport> rows, std::ostream& out);

std::string format_ghz(const FrequencyLimit& f);
std::string format_ghz(const BandwidthResult& b);

}  // namespace grin
