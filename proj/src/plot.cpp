#include "grinlens/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "grinlens/constants.hpp"
#include "grinlens/errors.hpp"

namespace grin {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape_xml(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Round step for roughly `target` ticks over span.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

}  // namespace

std::string render_gain_svg(std::span<const GainTrace> traces, double diameter_m, const PlotOptions& opt) {
    if (traces.empty()) throw DomainError("nothing to plot");
    double f_lo = std::numeric_limits<double>::infinity();
    double f_hi = -f_lo;
    double g_lo = f_lo;
    double g_hi = -f_lo;
    for (const auto& t : traces) {
        for (const auto& p : t.points) {
            f_lo = std::min(f_lo, p.frequency_hz / kGHz);
            f_hi = std::max(f_hi, p.frequency_hz / kGHz);
            g_lo = std::min(g_lo, p.gain_dbi);
            g_hi = std::max(g_hi, p.gain_dbi);
        }
    }
    g_lo = std::min(g_lo, aperture_gain_ceiling(diameter_m, f_lo * kGHz));
    g_hi = std::max(g_hi, aperture_gain_ceiling(diameter_m, f_hi * kGHz));
    const double g_step = nice_step(std::max(g_hi - g_lo, 1.0), 6);
    g_lo = std::floor(g_lo / g_step) * g_step;
    g_hi = std::ceil(g_hi / g_step) * g_step;
    if (f_hi <= f_lo) f_hi = f_lo + 1.0;
    const double f_step = nice_step(f_hi - f_lo, 8);

    const double left = 70, right = 160, top = 40, bottom = 60;
    const double pw = opt.width_px - left - right;
    const double ph = opt.height_px - top - bottom;
    auto sx = [&](double f) { return left + (f - f_lo) / (f_hi - f_lo) * pw; };
    auto sy = [&](double g) { return top + (g_hi - g) / (g_hi - g_lo) * ph; };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        opt.width_px, opt.height_px);
    svg += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", opt.width_px, opt.height_px);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                       left + pw / 2, escape_xml(opt.title));

    for (double f = std::ceil(f_lo / f_step) * f_step; f <= f_hi + 1e-9; f += f_step) {
        svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#ddd\"/>\n",
                           sx(f), top, top + ph);
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:g}</text>\n", sx(f),
                           top + ph + 18, f);
    }
    for (double g = g_lo; g <= g_hi + 1e-9; g += g_step) {
        svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"#ddd\"/>\n",
                           left, sy(g), left + pw);
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:g}</text>\n", left - 6,
                           sy(g) + 4, g);
    }
    svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n",
                       left, top, pw, ph);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">Frequency (GHz)</text>\n",
                       left + pw / 2, opt.height_px - 15.0);
    svg += fmt::format(
        "<text x=\"18\" y=\"{0:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0:.2f})\">Gain (dBi)</text>\n",
        top + ph / 2);

    std::string ceiling;
    constexpr int kCeilingSamples = 100;
    for (int i = 0; i <= kCeilingSamples; ++i) {
        const double f = f_lo + (f_hi - f_lo) * i / kCeilingSamples;
        ceiling += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", sx(f), sy(aperture_gain_ceiling(diameter_m, f * kGHz)));
    }
    svg += fmt::format(
        "<polyline class=\"ceiling\" points=\"{}\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"3 3\"/>\n",
        ceiling);

    double legend_y = top + 10;
    for (std::size_t k = 0; k < traces.size(); ++k) {
        const char* color = kPalette[k % std::size(kPalette)];
        std::string pts;
        for (std::size_t i = 0; i < traces[k].points.size(); ++i) {
            const auto& p = traces[k].points[i];
            pts += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", sx(p.frequency_hz / kGHz), sy(p.gain_dbi));
        }
        svg += fmt::format("<polyline class=\"trace\" points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
                           pts, color);
        svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                           left + pw + 10, legend_y, left + pw + 30, color);
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", left + pw + 35, legend_y + 4,
                           escape_xml(traces[k].label));
        legend_y += 18;
    }
    svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\" stroke-dasharray=\"3 3\"/>\n",
                       left + pw + 10, legend_y, left + pw + 30);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">100% efficiency</text>\n", left + pw + 35, legend_y + 4);
    svg += "</svg>\n";
    return svg;
}

}  // namespace grin
