#include "grinlens/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "grinlens/analysis.hpp"
#include "grinlens/constants.hpp"
#include "grinlens/errors.hpp"
#include "grinlens/lattice.hpp"
#include "grinlens/mesh.hpp"
#include "grinlens/plot.hpp"
#include "grinlens/raytrace.hpp"
#include "grinlens/sizing.hpp"

namespace grin {

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    out << content;
    if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot read '{}'", path));
    return in;
}

// Explicit path if configured, else <output dir>/<fallback> when an output
// directory is known, else nothing.
std::filesystem::path output_path(const RunConfig& c, const std::string& configured, const char* fallback) {
    if (!configured.empty()) return c.resolve_output(configured);
    const auto dir = c.default_output_dir();
    return dir.empty() ? std::filesystem::path{} : dir / fallback;
}

bool report_invalid(const std::vector<std::string>& problems, std::ostream& err) {
    if (problems.empty()) return false;
    err << fmt::format("invalid configuration ({} problem{}):\n", problems.size(), problems.size() == 1 ? "" : "s");
    for (const auto& p : problems) err << "  " << p << '\n';
    return true;
}

std::string stem_label(const std::string& path) { return std::filesystem::path(path).stem().string(); }

int design(const RunConfig& c, std::ostream& out) {
    const LensSpec spec = c.lens_spec();
    const auto table = FillTable::estimate_uniform(kDefaultFillGridPoints, c.mc_samples, c.seed, c.workers);
    const auto profile = PermittivityProfile::clamped(spec.radius_m(), spec.eps_min);
    const auto lattice = rasterize(spec, profile, c.mixing_model(), table);
    const auto s = lattice.summary();

    out << fmt::format("lens diameter      {:g} mm\n", c.diameter_mm);
    out << fmt::format("unit cell          {:g} mm\n", c.l_uc_mm[0]);
    out << fmt::format("host permittivity  {:g}\n", spec.eps_host);
    out << fmt::format("mixing model       {}\n", to_string(c.mixing));
    out << fmt::format("clamp radius       {:.3f} mm (eps floor {:g})\n", profile.clamp_radius() / kMm, spec.eps_min);
    out << fmt::format("cells across       {}\n", s.cells_across);
    out << fmt::format("active cells       {}\n", s.active_cells);
    out << fmt::format("wall threshold t   {:.4f} .. {:.4f}\n", s.t_min, s.t_max);
    out << fmt::format("cell permittivity  {:.4f} .. {:.4f}\n", s.eps_min, s.eps_max);

    if (!c.cells.empty()) {
        const auto path = c.resolve_output(c.cells);
        std::ostringstream csv;
        csv << "i,j,k,center_radius_mm,eps,t\n";
        for (const auto& cell : lattice.active_cells()) {
            csv << fmt::format("{},{},{},{:.6f},{:.6f},{:.6f}\n", cell.i, cell.j, cell.k,
                               lattice.cell_center(cell).norm() / kMm, *lattice.cell_eps(cell), *lattice.threshold(cell));
        }
        write_text_file(path, csv.str());
        out << fmt::format("cells written      {}\n", path.string());
    }

    // Meshing is expensive, so it only runs when an output asks for it.
    const auto stl_path = c.stl.empty() ? std::filesystem::path{} : c.resolve_output(c.stl);
    const auto stats_path = c.mesh_stats.empty() ? std::filesystem::path{} : c.resolve_output(c.mesh_stats);
    if (stl_path.empty() && stats_path.empty()) return kExitOk;

    const auto mesh = extract_mesh(lattice, c.voxels_per_cell, c.workers);
    const auto stats = mesh_stats(mesh);
    out << fmt::format("mesh               {} vertices, {} triangles, watertight={}\n", stats.n_vertices,
                       stats.n_triangles, stats.watertight ? "yes" : "no");
    out << fmt::format("solid volume       {:.6e} m^3 (sphere {:.6e} m^3)\n", stats.volume_m3,
                       4.0 / 3.0 * kPi * std::pow(spec.radius_m(), 3));
    if (!stl_path.empty()) {
        if (stl_path.has_parent_path()) std::filesystem::create_directories(stl_path.parent_path());
        const auto bytes = export_stl(mesh, stl_path);
        out << fmt::format("stl written        {} ({} bytes)\n", stl_path.string(), bytes);
    }
    if (!stats_path.empty()) {
        std::ostringstream csv;
        write_mesh_stats_csv(stats, csv);
        write_text_file(stats_path, csv.str());
        out << fmt::format("mesh stats written {}\n", stats_path.string());
    }
    return stats.watertight ? kExitOk : kExitFailure;
}

int size(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::vector<double> cells;
    for (double l : c.l_uc_mm) cells.push_back(l * kMm);
    const auto rows = size_cells(cells, c.sizing_params());
    for (const auto& r : rows)
        if (r.bandwidth.below_band)
            err << fmt::format("warning: {:g} mm cell tops out at {:.1f} GHz, below the {:g} GHz band start; bandwidth 0\n",
                               r.cell_m / kMm, r.f_predicted_hz / kGHz, c.band_start_ghz);
    write_sizing_table(rows, out);
    out << fmt::format("(ratio limit {:g} guided wavelengths per cell, host eps {:g}; calibrated on Luneburg lenses)\n",
                       c.ratio_limit, c.eps_host);
    if (const auto path = output_path(c, c.report, "sizing.csv"); !path.empty()) {
        std::ostringstream csv;
        write_sizing_csv(rows, csv);
        write_text_file(path, csv.str());
        out << fmt::format("report written {}\n", path.string());
    }
    return kExitOk;
}

int analyze(const RunConfig& c, std::ostream& out) {
    const auto band = std::pair{c.band_start_ghz * kGHz, c.band_ceiling_ghz * kGHz};
    std::vector<GainTrace> traces;
    for (const auto& path : c.gain) {
        auto in = open_input(path);
        traces.push_back(read_gain_csv(in, stem_label(path), path, band));
    }
    if (!c.aut.empty()) {
        auto ref_in = open_input(c.ref_power);
        const auto ref = read_power_csv(ref_in, stem_label(c.ref_power), c.ref_power);
        auto ref_gain_in = open_input(c.ref_gain);
        const auto ref_gain = read_gain_csv(ref_gain_in, stem_label(c.ref_gain), c.ref_gain, band);
        for (const auto& path : c.aut) {
            auto in = open_input(path);
            traces.push_back(comparison_gain(read_power_csv(in, stem_label(path), path), ref, ref_gain));
        }
    }

    const double diameter = c.diameter_mm * kMm;
    std::ostringstream report;
    std::ostringstream eff_csv;
    report << "label,f_max_ghz,peak_gain_dbi,peak_frequency_ghz,min_efficiency,max_efficiency\n";
    eff_csv << "label,frequency_ghz,gain_dbi,ceiling_dbi,efficiency\n";
    out << fmt::format("{:<20}  {:>10}  {:>10}  {:>10}  {:>16}\n", "trace", "f_max GHz", "peak dBi", "at GHz",
                       "efficiency");
    for (const auto& t : traces) {
        const auto f_max = detect_f_max(t, c.drop_db, static_cast<std::size_t>(c.confirm_points));
        const auto eff = efficiency(t, diameter);
        const auto peak = std::max_element(t.points.begin(), t.points.end(),
                                           [](const auto& a, const auto& b) { return a.gain_dbi < b.gain_dbi; });
        double e_lo = eff.front().efficiency;
        double e_hi = e_lo;
        for (std::size_t i = 0; i < eff.size(); ++i) {
            e_lo = std::min(e_lo, eff[i].efficiency);
            e_hi = std::max(e_hi, eff[i].efficiency);
            eff_csv << fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f}\n", t.label, t.points[i].frequency_hz / kGHz,
                                   t.points[i].gain_dbi, aperture_gain_ceiling(diameter, t.points[i].frequency_hz),
                                   eff[i].efficiency);
        }
        const std::string f_text = format_ghz(f_max);
        report << fmt::format("{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n", t.label, f_text, peak->gain_dbi,
                              peak->frequency_hz / kGHz, e_lo, e_hi);
        out << fmt::format("{:<20}  {:>10}  {:>10.2f}  {:>10.3f}  {:>7.3f} .. {:.3f}\n", t.label, f_text,
                           peak->gain_dbi, peak->frequency_hz / kGHz, e_lo, e_hi);
    }

    if (const auto path = output_path(c, c.report, "analysis.csv"); !path.empty()) {
        write_text_file(path, report.str());
        out << fmt::format("report written     {}\n", path.string());
    }
    if (const auto path = output_path(c, c.efficiency, "efficiency.csv"); !path.empty()) {
        write_text_file(path, eff_csv.str());
        out << fmt::format("efficiency written {}\n", path.string());
    }
    if (const auto path = output_path(c, c.plot, "gain.svg"); !path.empty()) {
        write_text_file(path, render_gain_svg(traces, diameter));
        out << fmt::format("plot written       {}\n", path.string());
    }
    return kExitOk;
}

int trace(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const double radius = 0.5 * c.diameter_mm * kMm;
    const double step = radius / c.trace_step_divisor;
    std::vector<double> offsets;
    for (double f : c.trace_offsets) offsets.push_back(f * radius);

    std::vector<std::pair<std::string, PermittivityProfile>> profiles;
    if (c.trace_profile != "clamped") profiles.emplace_back("ideal", PermittivityProfile::ideal(radius));
    if (c.trace_profile != "ideal") profiles.emplace_back("clamped", PermittivityProfile::clamped(radius, c.eps_min));

    std::vector<Ray> all_rays;
    out << fmt::format("{:<8}  {:>5}  {:>14}  {:>10}  {:>12}\n", "profile", "rays", "rms spread (m)", "spread/R",
                       "focus x (mm)");
    for (const auto& [name, profile] : profiles) {
        const auto report = focus_report(offsets, profile, step, c.workers);
        for (const auto& w : report.warnings) err << "warning: " << name << ": " << w << '\n';
        out << fmt::format("{:<8}  {:>5}  {:>14.6e}  {:>10.3e}  {:>12.4f}\n", name, report.rays, report.rms_spread,
                           report.rms_spread / radius, report.focal_point.x / kMm);
        all_rays.insert(all_rays.end(), report.traced.begin(), report.traced.end());
    }
    if (!c.rays.empty()) {
        const auto path = c.resolve_output(c.rays);
        std::ostringstream csv;
        write_rays_csv(all_rays, csv);
        write_text_file(path, csv.str());
        out << fmt::format("rays written {}\n", path.string());
    }
    return kExitOk;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ValidationError& e) {
        report_invalid(e.problems(), err);
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace

int cmd_design(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (report_invalid(validate(config, Command::Design), err)) return kExitInvalidConfig;
    return guarded(err, [&] { return design(config, out); });
}

int cmd_size(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (report_invalid(validate(config, Command::Size), err)) return kExitInvalidConfig;
    return guarded(err, [&] { return size(config, out, err); });
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (report_invalid(validate(config, Command::Analyze), err)) return kExitInvalidConfig;
    return guarded(err, [&] { return analyze(config, out); });
}

int cmd_trace(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (report_invalid(validate(config, Command::Trace), err)) return kExitInvalidConfig;
    return guarded(err, [&] { return trace(config, out, err); });
}

int run_command(Command command, const RunConfig& config, std::ostream& out, std::ostream& err) {
    switch (command) {
        case Command::Design: return cmd_design(config, out, err);
        case Command::Size: return cmd_size(config, out, err);
        case Command::Analyze: return cmd_analyze(config, out, err);
        case Command::Trace: return cmd_trace(config, out, err);
    }
    return kExitFailure;
}

}  // namespace grin
