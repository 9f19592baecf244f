#include "grinlens/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "grinlens/constants.hpp"
#include "grinlens/errors.hpp"

namespace grin {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    while (true) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

double to_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw std::invalid_argument(fmt::format("{}: '{}' is not a number", key, text));
    return v;
}

template <class Int>
Int to_integer(std::string_view key, std::string_view text) {
    text = trim(text);
    Int v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw std::invalid_argument(fmt::format("{}: '{}' is not a non-negative integer", key, text));
    return v;
}

std::vector<double> to_double_list(std::string_view key, std::string_view text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(to_double(key, item));
    if (out.empty()) throw std::invalid_argument(fmt::format("{}: empty list", key));
    return out;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"diameter_mm", [](RunConfig& c, std::string_view v) { c.diameter_mm = to_double("diameter_mm", v); }},
        {"eps_host", [](RunConfig& c, std::string_view v) { c.eps_host = to_double("eps_host", v); }},
        {"eps_min", [](RunConfig& c, std::string_view v) { c.eps_min = to_double("eps_min", v); }},
        {"l_uc_mm", [](RunConfig& c, std::string_view v) { c.l_uc_mm = to_double_list("l_uc_mm", v); }},
        {"mixing",
         [](RunConfig& c, std::string_view v) {
             try {
                 c.mixing = parse_mixing_kind(trim(v));
             } catch (const DomainError& e) {
                 throw std::invalid_argument(fmt::format("mixing: {}", e.what()));
             }
         }},
        {"voxels_per_cell", [](RunConfig& c, std::string_view v) { c.voxels_per_cell = to_integer<int>("voxels_per_cell", v); }},
        {"ratio_limit", [](RunConfig& c, std::string_view v) { c.ratio_limit = to_double("ratio_limit", v); }},
        {"band_start_ghz", [](RunConfig& c, std::string_view v) { c.band_start_ghz = to_double("band_start_ghz", v); }},
        {"band_ceiling_ghz", [](RunConfig& c, std::string_view v) { c.band_ceiling_ghz = to_double("band_ceiling_ghz", v); }},
        {"report_step_ghz", [](RunConfig& c, std::string_view v) { c.report_step_ghz = to_double("report_step_ghz", v); }},
        {"drop_db", [](RunConfig& c, std::string_view v) { c.drop_db = to_double("drop_db", v); }},
        {"confirm_points", [](RunConfig& c, std::string_view v) { c.confirm_points = to_integer<int>("confirm_points", v); }},
        {"seed", [](RunConfig& c, std::string_view v) { c.seed = to_integer<std::uint64_t>("seed", v); }},
        {"mc_samples", [](RunConfig& c, std::string_view v) { c.mc_samples = to_integer<std::size_t>("mc_samples", v); }},
        {"workers", [](RunConfig& c, std::string_view v) { c.workers = to_integer<unsigned>("workers", v); }},
        {"trace_profile", [](RunConfig& c, std::string_view v) { c.trace_profile = std::string(trim(v)); }},
        {"trace_step_divisor", [](RunConfig& c, std::string_view v) { c.trace_step_divisor = to_double("trace_step_divisor", v); }},
        {"trace_offsets", [](RunConfig& c, std::string_view v) { c.trace_offsets = to_double_list("trace_offsets", v); }},
        {"output_dir", [](RunConfig& c, std::string_view v) { c.output_dir = std::string(trim(v)); }},
        {"stl", [](RunConfig& c, std::string_view v) { c.stl = std::string(trim(v)); }},
        {"mesh_stats", [](RunConfig& c, std::string_view v) { c.mesh_stats = std::string(trim(v)); }},
        {"cells", [](RunConfig& c, std::string_view v) { c.cells = std::string(trim(v)); }},
        {"report", [](RunConfig& c, std::string_view v) { c.report = std::string(trim(v)); }},
        {"efficiency", [](RunConfig& c, std::string_view v) { c.efficiency = std::string(trim(v)); }},
        {"plot", [](RunConfig& c, std::string_view v) { c.plot = std::string(trim(v)); }},
        {"rays", [](RunConfig& c, std::string_view v) { c.rays = std::string(trim(v)); }},
        {"gain", [](RunConfig& c, std::string_view v) { c.gain = split_list(v); }},
        {"aut", [](RunConfig& c, std::string_view v) { c.aut = split_list(v); }},
        {"ref_power", [](RunConfig& c, std::string_view v) { c.ref_power = std::string(trim(v)); }},
        {"ref_gain", [](RunConfig& c, std::string_view v) { c.ref_gain = std::string(trim(v)); }},
    };
    return table;
}

}  // namespace

LensSpec RunConfig::lens_spec(std::size_t cell_index) const {
    return {diameter_mm * kMm, eps_host, eps_min, l_uc_mm.at(cell_index) * kMm};
}

SizingParams RunConfig::sizing_params() const {
    return {eps_host, ratio_limit, band_start_ghz * kGHz, band_ceiling_ghz * kGHz, report_step_ghz * kGHz};
}

std::filesystem::path RunConfig::default_output_dir() const {
    if (!output_dir.empty()) return output_dir;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return {};
}

std::filesystem::path RunConfig::resolve_output(const std::string& path) const {
    std::filesystem::path p(path);
    if (p.is_absolute()) return p;
    const auto dir = default_output_dir();
    return dir.empty() ? p : dir / p;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, setter] : setters()) k.push_back(name);
        return k;
    }();
    return keys;
}

std::vector<Setting> parse_config_text(std::string_view text, std::string_view source) {
    std::vector<Setting> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(std::string(source), line_no, fmt::format("expected 'key = value', got '{}'", line));
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError(std::string(source), line_no, "missing key before '='");
        out.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
    }
    return out;
}

std::vector<Setting> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot read config file '{}'", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path.string());
}

void apply_settings(RunConfig& config, const std::vector<Setting>& settings, std::vector<std::string>& problems) {
    for (const auto& [key, value] : settings) {
        const auto it = setters().find(key);
        if (it == setters().end()) {
            problems.push_back(fmt::format("{}: unknown setting", key));
            continue;
        }
        try {
            it->second(config, value);
        } catch (const std::invalid_argument& e) {
            problems.emplace_back(e.what());
        }
    }
}

std::vector<std::string> validate(const RunConfig& c, Command command) {
    std::vector<std::string> p;
    if (!(c.eps_host >= 1.0)) p.push_back(fmt::format("eps_host: must be >= 1 (got {})", c.eps_host));
    if (c.l_uc_mm.empty()) p.emplace_back("l_uc_mm: at least one unit-cell size is required");
    for (double l : c.l_uc_mm)
        if (!(l > 0.0)) p.push_back(fmt::format("l_uc_mm: must be > 0 (got {})", l));

    const bool lens = command != Command::Size;
    if (lens) {
        if (!(c.diameter_mm > 0.0)) p.push_back(fmt::format("diameter_mm: must be > 0 (got {})", c.diameter_mm));
        if (!(c.eps_min >= 1.0 && c.eps_min <= 2.0))
            p.push_back(fmt::format("eps_min: must lie in [1, 2] (got {})", c.eps_min));
        if (!(c.eps_min < c.eps_host))
            p.push_back(fmt::format("eps_min: must be below eps_host ({} >= {})", c.eps_min, c.eps_host));
    }
    if (command == Command::Design) {
        if (!(c.eps_host > 1.0)) p.push_back(fmt::format("eps_host: must be > 1 for a printable lattice (got {})", c.eps_host));
        if (c.l_uc_mm.size() > 1) p.push_back(fmt::format("l_uc_mm: design takes one unit-cell size (got {})", c.l_uc_mm.size()));
        if (!c.l_uc_mm.empty() && c.l_uc_mm[0] > 0.0 && c.diameter_mm > 0.0 && !(c.l_uc_mm[0] < c.diameter_mm))
            p.push_back(fmt::format("l_uc_mm: {} must be smaller than diameter_mm {}", c.l_uc_mm[0], c.diameter_mm));
        if (c.voxels_per_cell < 16) p.push_back(fmt::format("voxels_per_cell: must be >= 16 (got {})", c.voxels_per_cell));
        if (c.mc_samples < 10'000) p.push_back(fmt::format("mc_samples: must be >= 10000 (got {})", c.mc_samples));
    }
    if (command == Command::Size || command == Command::Analyze) {
        if (!(c.band_start_ghz > 0.0)) p.push_back(fmt::format("band_start_ghz: must be > 0 (got {})", c.band_start_ghz));
        if (!(c.band_start_ghz < c.band_ceiling_ghz))
            p.push_back(fmt::format("band_ceiling_ghz: must exceed band_start_ghz ({} <= {})", c.band_ceiling_ghz,
                                    c.band_start_ghz));
    }
    if (command == Command::Size) {
        if (!(c.ratio_limit > 0.0)) p.push_back(fmt::format("ratio_limit: must be > 0 (got {})", c.ratio_limit));
        if (!(c.report_step_ghz >= 0.0)) p.push_back(fmt::format("report_step_ghz: must be >= 0 (got {})", c.report_step_ghz));
    }
    if (command == Command::Analyze) {
        if (!(c.drop_db > 0.0)) p.push_back(fmt::format("drop_db: must be > 0 (got {})", c.drop_db));
        if (c.confirm_points < 1) p.push_back(fmt::format("confirm_points: must be >= 1 (got {})", c.confirm_points));
        if (c.gain.empty() && c.aut.empty()) p.emplace_back("gain: no input traces (give gain files or aut files)");
        if (!c.aut.empty() && (c.ref_power.empty() || c.ref_gain.empty()))
            p.emplace_back("ref_power/ref_gain: required with aut traces for the comparison method");
    }
    if (command == Command::Trace) {
        if (c.trace_profile != "ideal" && c.trace_profile != "clamped" && c.trace_profile != "both")
            p.push_back(fmt::format("trace_profile: expected ideal, clamped or both (got '{}')", c.trace_profile));
        if (!(c.trace_step_divisor >= 500.0))
            p.push_back(fmt::format("trace_step_divisor: must be >= 500 (got {})", c.trace_step_divisor));
        if (c.trace_offsets.empty()) p.emplace_back("trace_offsets: at least one offset is required");
        for (double o : c.trace_offsets)
            if (!(o >= 0.0 && o <= 0.9)) p.push_back(fmt::format("trace_offsets: {} outside [0, 0.9]", o));
    }
    return p;
}

}  // namespace grin
