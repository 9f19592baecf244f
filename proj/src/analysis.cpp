#include "grinlens/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "grinlens/constants.hpp"
#include "grinlens/errors.hpp"

namespace grin {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view text, double& out) {
    text = trim(text);
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

// Two-column numeric CSV with a fixed header. Blank lines are skipped.
std::vector<std::pair<double, double>> read_two_column_csv(std::istream& in, std::string_view source,
                                                           std::string_view header) {
    const std::string src(source);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::pair<double, double>> rows;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        const std::string_view view = trim(line);
        if (!have_header) {
            if (view != header) throw ParseError(src, line_no, fmt::format("expected header '{}'", header));
            have_header = true;
            continue;
        }
        if (view.empty()) continue;
        const auto comma = view.find(',');
        if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos)
            throw ParseError(src, line_no, "expected exactly two comma-separated values");
        double a = 0.0;
        double b = 0.0;
        if (!parse_double(view.substr(0, comma), a) || !parse_double(view.substr(comma + 1), b))
            throw ParseError(src, line_no, fmt::format("invalid number in '{}'", view));
        rows.emplace_back(a, b);
    }
    if (!have_header) throw ParseError(src, 1, fmt::format("missing header '{}'", header));
    return rows;
}

void check_increasing(const std::vector<double>& f, std::string_view what) {
    for (std::size_t i = 1; i < f.size(); ++i)
        if (!(f[i] > f[i - 1]))
            throw DomainError(fmt::format("{}: frequencies must be strictly increasing ({} Hz after {} Hz)", what,
                                          f[i], f[i - 1]));
}

}  // namespace

GainTrace GainTrace::make(std::vector<GainPoint> points, std::string label,
                          std::optional<std::pair<double, double>> band) {
    GainTrace t;
    t.points = std::move(points);
    t.label = std::move(label);
    if (band) {
        t.band_start_hz = band->first;
        t.band_stop_hz = band->second;
    } else if (!t.points.empty()) {
        t.band_start_hz = t.points.front().frequency_hz;
        t.band_stop_hz = t.points.back().frequency_hz;
    }
    t.validate();
    return t;
}

void GainTrace::validate() const {
    if (points.size() < 3)
        throw InsufficientData(fmt::format("gain trace '{}' needs at least 3 points (has {})", label, points.size()));
    std::vector<double> f;
    f.reserve(points.size());
    for (const auto& p : points) {
        if (p.frequency_hz < band_start_hz || p.frequency_hz > band_stop_hz)
            throw DomainError(fmt::format("gain trace '{}': {} GHz outside band [{}, {}] GHz", label,
                                          p.frequency_hz / kGHz, band_start_hz / kGHz, band_stop_hz / kGHz));
        f.push_back(p.frequency_hz);
    }
    check_increasing(f, label);
}

void RawPowerTrace::validate() const {
    std::vector<double> f;
    f.reserve(points.size());
    for (const auto& p : points) f.push_back(p.frequency_hz);
    check_increasing(f, label);
}

GainTrace comparison_gain(const RawPowerTrace& aut, const RawPowerTrace& ref, const GainTrace& ref_gain) {
    aut.validate();
    ref.validate();
    ref_gain.validate();
    // No resampling: every trace must carry exactly the same frequencies.
    std::vector<double> offending;
    const std::size_t n = std::max({aut.points.size(), ref.points.size(), ref_gain.points.size()});
    for (std::size_t i = 0; i < n; ++i) {
        const bool have_all = i < aut.points.size() && i < ref.points.size() && i < ref_gain.points.size();
        if (have_all && aut.points[i].frequency_hz == ref.points[i].frequency_hz &&
            aut.points[i].frequency_hz == ref_gain.points[i].frequency_hz)
            continue;
        if (i < aut.points.size()) offending.push_back(aut.points[i].frequency_hz);
        else if (i < ref.points.size()) offending.push_back(ref.points[i].frequency_hz);
        else offending.push_back(ref_gain.points[i].frequency_hz);
    }
    if (!offending.empty()) {
        std::string list;
        for (std::size_t i = 0; i < offending.size() && i < 10; ++i)
            list += fmt::format("{}{} GHz", i ? ", " : "", offending[i] / kGHz);
        if (offending.size() > 10) list += fmt::format(" (+{} more)", offending.size() - 10);
        throw AlignmentError(fmt::format("frequency grids of '{}', '{}' and '{}' differ at: {}", aut.label,
                                         ref.label, ref_gain.label, list),
                             std::move(offending));
    }
    std::vector<GainPoint> out;
    out.reserve(aut.points.size());
    for (std::size_t i = 0; i < aut.points.size(); ++i)
        out.push_back({aut.points[i].frequency_hz,
                       ref_gain.points[i].gain_dbi + (aut.points[i].power_db - ref.points[i].power_db)});
    return GainTrace::make(std::move(out), aut.label, std::pair{ref_gain.band_start_hz, ref_gain.band_stop_hz});
}

double aperture_gain_ceiling(double diameter_m, double frequency_hz) {
    if (!(diameter_m > 0.0)) throw DomainError(fmt::format("aperture diameter must be > 0 (got {})", diameter_m));
    if (!(frequency_hz > 0.0)) throw DomainError(fmt::format("frequency must be > 0 (got {})", frequency_hz));
    const double lambda = kSpeedOfLight / frequency_hz;
    const double x = kPi * diameter_m / lambda;
    return 10.0 * std::log10(x * x);
}

FrequencyLimit detect_f_max(const GainTrace& trace, double drop_db, std::size_t confirm_points) {
    if (confirm_points == 0) throw DomainError("confirm_points must be >= 1");
    if (trace.points.size() < confirm_points + 1)
        throw InsufficientData(fmt::format("knee detection needs at least {} samples (trace '{}' has {})",
                                           confirm_points + 1, trace.label, trace.points.size()));
    trace.validate();
    const auto& pts = trace.points;
    double running_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + confirm_points < pts.size(); ++i) {
        running_max = std::max(running_max, pts[i].gain_dbi);
        bool dropped = true;
        for (std::size_t j = i + 1; j <= i + confirm_points && dropped; ++j)
            dropped = running_max - pts[j].gain_dbi >= drop_db;
        if (dropped) return {pts[i].frequency_hz, false};
    }
    return {trace.band_stop_hz, true};
}

std::vector<EfficiencyPoint> efficiency(const GainTrace& trace, double diameter_m) {
    std::vector<EfficiencyPoint> out;
    out.reserve(trace.points.size());
    for (const auto& p : trace.points) {
        const double delta_db = p.gain_dbi - aperture_gain_ceiling(diameter_m, p.frequency_hz);
        out.push_back({p.frequency_hz, std::pow(10.0, delta_db / 10.0)});
    }
    return out;
}

GainTrace read_gain_csv(std::istream& in, std::string label, std::string_view source,
                        std::optional<std::pair<double, double>> band) {
    const auto rows = read_two_column_csv(in, source, "frequency_ghz,gain_dbi");
    std::vector<GainPoint> pts;
    pts.reserve(rows.size());
    for (const auto& [f, g] : rows) pts.push_back({f * kGHz, g});
    return GainTrace::make(std::move(pts), std::move(label), band);
}

RawPowerTrace read_power_csv(std::istream& in, std::string label, std::string_view source) {
    const auto rows = read_two_column_csv(in, source, "frequency_ghz,power_db");
    RawPowerTrace t;
    t.label = std::move(label);
    for (const auto& [f, p] : rows) t.points.push_back({f * kGHz, p});
    t.validate();
    return t;
}

void write_gain_csv(const GainTrace& trace, std::ostream& out) {
    out << "frequency_ghz,gain_dbi\n";
    for (const auto& p : trace.points) out << fmt::format("{:.6f},{:.6f}\n", p.frequency_hz / kGHz, p.gain_dbi);
}

}  // namespace grin
