#include "grinlens/sizing.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "grinlens/constants.hpp"
#include "grinlens/errors.hpp"

namespace grin {

namespace {

void check_frequency(double f) {
    if (!(f > 0.0)) throw DomainError(fmt::format("frequency must be > 0 (got {} Hz)", f));
}

void check_host(double eps_host) {
    if (!(eps_host >= 1.0)) throw DomainError(fmt::format("host permittivity must be >= 1 (got {})", eps_host));
}

// Shortest decimal form for table cells: 40 -> "40", 33.4 -> "33.4".
std::string trim_number(double v, int decimals) {
    std::string s = fmt::format("{:.{}f}", v, decimals);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

}  // namespace

double guided_wavelength(double frequency_hz, double eps_host) {
    check_frequency(frequency_hz);
    check_host(eps_host);
    return (kSpeedOfLight / frequency_hz) / std::sqrt(eps_host);
}

double cell_ratio(double cell_m, double frequency_hz, double eps_host) {
    return cell_m / guided_wavelength(frequency_hz, eps_host);
}

double predict_f_max(double cell_m, double eps_host, double ratio_limit) {
    if (!(cell_m > 0.0)) throw DomainError(fmt::format("unit-cell size must be > 0 (got {} m)", cell_m));
    check_host(eps_host);
    return ratio_limit * kSpeedOfLight / (cell_m * std::sqrt(eps_host));
}

double max_cell_for_frequency(double f_required_hz, double eps_host, double ratio_limit) {
    check_frequency(f_required_hz);
    check_host(eps_host);
    return ratio_limit * kSpeedOfLight / (f_required_hz * std::sqrt(eps_host));
}

BandwidthResult bandwidth(const FrequencyLimit& f_max, double band_start_hz, double band_ceiling_hz) {
    if (!(band_start_hz < band_ceiling_hz))
        throw DomainError(fmt::format("band start {} Hz must be below ceiling {} Hz", band_start_hz, band_ceiling_hz));
    if (f_max.exceeds_band || f_max.hz > band_ceiling_hz) return {band_ceiling_hz - band_start_hz, true, false};
    if (f_max.hz < band_start_hz) return {0.0, false, true};
    return {f_max.hz - band_start_hz, false, false};
}

SizingReport size_cell(double cell_m, const SizingParams& p) {
    SizingReport row;
    row.cell_m = cell_m;
    row.f_predicted_hz = predict_f_max(cell_m, p.eps_host, p.ratio_limit);
    if (row.f_predicted_hz > p.band_ceiling_hz) {
        row.f_max = {p.band_ceiling_hz, true};
    } else {
        double f = row.f_predicted_hz;
        if (p.report_step_hz > 0.0) f = std::floor(f / p.report_step_hz + 1e-9) * p.report_step_hz;
        row.f_max = {f, false};
    }
    row.bandwidth = bandwidth(row.f_max, p.band_start_hz, p.band_ceiling_hz);
    row.lambda_m = kSpeedOfLight / row.f_max.hz;
    row.lambda_g = guided_wavelength(row.f_max.hz, p.eps_host);
    row.ratio = cell_m / row.lambda_g;
    return row;
}

std::vector<SizingReport> size_cells(std::span<const double> cells_m, const SizingParams& params) {
    std::vector<SizingReport> rows;
    rows.reserve(cells_m.size());
    for (double c : cells_m) rows.push_back(size_cell(c, params));
    return rows;
}

std::string format_ghz(const FrequencyLimit& f) {
    return (f.exceeds_band ? ">" : "") + trim_number(f.hz / kGHz, 3);
}

std::string format_ghz(const BandwidthResult& b) {
    return (b.exceeds_band ? ">" : "") + trim_number(b.hz / kGHz, 3);
}

void write_sizing_csv(std::span<const SizingReport> rows, std::ostream& out) {
    out << "l_uc_mm,f_max_ghz,bandwidth_ghz,ratio\n";
    for (const auto& r : rows)
        out << fmt::format("{},{},{},{:.4f}\n", trim_number(r.cell_m / kMm, 4), format_ghz(r.f_max),
                           format_ghz(r.bandwidth), r.ratio);
}

void write_sizing_table(std::span<const SizingReport> rows, std::ostream& out) {
    out << fmt::format("{:>10}  {:>16}  {:>13}  {:>11}  {:>9}\n", "l_uc (mm)", "max freq (GHz)", "predicted",
                       "bandwidth", "l_uc/lg");
    for (const auto& r : rows) {
        out << fmt::format("{:>10}  {:>16}  {:>13}  {:>11}  {:>9.2f}\n", trim_number(r.cell_m / kMm, 4),
                           (r.f_max.exceeds_band ? "> " : "") + trim_number(r.f_max.hz / kGHz, 3),
                           fmt::format("{:.1f}", r.f_predicted_hz / kGHz),
                           (r.bandwidth.exceeds_band ? "> " : "") + trim_number(r.bandwidth.hz / kGHz, 3),
                           r.ratio);
    }
}

}  // namespace grin
