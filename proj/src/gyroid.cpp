#include "grinlens/gyroid.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "grinlens/constants.hpp"
#include "grinlens/errors.hpp"
#include "grinlens/parallel.hpp"

namespace grin {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr std::size_t kChunkSamples = std::size_t{1} << 16;
constexpr double kEpsTolerance = 1e-6;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// 53-bit uniform in [0, 1); independent of the standard library's distributions.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Counts samples per histogram bin, where bin k holds |g| in (t[k-1], t[k]];
// bin 0 is |g| <= t[0] and the last bin everything above t.back().
std::vector<std::uint64_t> sample_histogram(const std::vector<double>& t_grid, std::size_t samples,
                                            std::uint64_t seed, unsigned workers) {
    const std::size_t n_chunks = (samples + kChunkSamples - 1) / kChunkSamples;
    std::vector<std::vector<std::uint64_t>> partial(n_chunks);
    parallel_for(n_chunks, workers, [&](std::size_t chunk) {
        std::vector<std::uint64_t> counts(t_grid.size() + 1, 0);
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(chunk)));
        const std::size_t begin = chunk * kChunkSamples;
        const std::size_t end = std::min(samples, begin + kChunkSamples);
        for (std::size_t i = begin; i < end; ++i) {
            const double u = kTwoPi * unit_uniform(rng);
            const double v = kTwoPi * unit_uniform(rng);
            const double w = kTwoPi * unit_uniform(rng);
            const double g = std::fabs(gyroid_phase(u, v, w));
            const auto bin = std::lower_bound(t_grid.begin(), t_grid.end(), g) - t_grid.begin();
            ++counts[static_cast<std::size_t>(bin)];
        }
        partial[chunk] = std::move(counts);
    });
    std::vector<std::uint64_t> total(t_grid.size() + 1, 0);
    for (const auto& counts : partial)
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += counts[k];
    return total;
}

void check_threshold(double t) {
    if (!(t >= 0.0 && t <= kGyroidMax))
        throw DomainError(fmt::format("wall threshold {} outside [0, {}]", t, kGyroidMax));
}

}  // namespace

double gyroid_phase(double u, double v, double w) {
    const double g = std::sin(u) * std::cos(v) + std::sin(v) * std::cos(w) + std::sin(w) * std::cos(u);
    return std::clamp(g, -kGyroidMax, kGyroidMax);
}

double gyroid_value(const Vec3& p, double cell_m) {
    const double k = kTwoPi / cell_m;
    return gyroid_phase(k * p.x, k * p.y, k * p.z);
}

bool is_solid(const Vec3& p, const GyroidField& field) {
    return std::fabs(field.value(p)) <= field.threshold;
}

double fill_fraction(double t, std::size_t samples, std::uint64_t seed, unsigned workers) {
    check_threshold(t);
    if (samples < 10'000) throw DomainError(fmt::format("fill_fraction needs >= 1e4 samples (got {})", samples));
    const auto hist = sample_histogram({t}, samples, seed, workers);
    return static_cast<double>(hist[0]) / static_cast<double>(samples);
}

FillTable::FillTable(std::vector<FillSample> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw DomainError("fill table needs at least two points");
    for (std::size_t k = 1; k < points_.size(); ++k) {
        if (!(points_[k].t > points_[k - 1].t))
            throw DomainError("fill table t grid must be strictly increasing");
        if (points_[k].phi < points_[k - 1].phi)
            throw DomainError("fill table phi must be non-decreasing");
    }
}

FillTable FillTable::estimate(const std::vector<double>& t_grid, std::size_t samples, std::uint64_t seed,
                              unsigned workers) {
    for (double t : t_grid) check_threshold(t);
    if (samples < 10'000) throw DomainError(fmt::format("fill table needs >= 1e4 samples (got {})", samples));
    const auto hist = sample_histogram(t_grid, samples, seed, workers);
    std::vector<FillSample> points;
    points.reserve(t_grid.size());
    std::uint64_t cumulative = 0;
    const double n = static_cast<double>(samples);
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        cumulative += hist[k];
        const double phi = static_cast<double>(cumulative) / n;
        points.push_back({t_grid[k], phi, std::sqrt(phi * (1.0 - phi) / n)});
    }
    FillTable table(std::move(points));
    table.samples_ = samples;
    return table;
}

FillTable FillTable::estimate_uniform(std::size_t n_points, std::size_t samples, std::uint64_t seed,
                                      unsigned workers) {
    if (n_points < 2) throw DomainError("fill table needs at least two grid points");
    std::vector<double> grid(n_points);
    for (std::size_t k = 0; k < n_points; ++k)
        grid[k] = kGyroidMax * static_cast<double>(k) / static_cast<double>(n_points - 1);
    return estimate(grid, samples, seed, workers);
}

double FillTable::phi(double t) const {
    if (points_.empty()) throw DomainError("empty fill table");
    if (t <= points_.front().t) return points_.front().phi;
    if (t >= points_.back().t) return points_.back().phi;
    const auto hi = std::upper_bound(points_.begin(), points_.end(), t,
                                     [](double v, const FillSample& s) { return v < s.t; });
    const auto lo = hi - 1;
    const double a = (t - lo->t) / (hi->t - lo->t);
    return lo->phi + a * (hi->phi - lo->phi);
}

void FillTable::write_csv(std::ostream& out) const {
    out << "t,phi,stderr\n";
    for (const auto& p : points_) out << fmt::format("{:.6f},{:.9f},{:.3e}\n", p.t, p.phi, p.stderr_phi);
}

FillTable FillTable::read_csv(std::istream& in, std::string_view source) {
    const std::string src(source);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError(src, 1, "empty file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,phi,stderr") throw ParseError(src, line_no, "expected header 't,phi,stderr'");
    std::vector<FillSample> points;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        FillSample s;
        char c1 = 0, c2 = 0;
        if (!(row >> s.t >> c1 >> s.phi >> c2 >> s.stderr_phi) || c1 != ',' || c2 != ',')
            throw ParseError(src, line_no, "expected three comma-separated numbers");
        points.push_back(s);
    }
    return FillTable(std::move(points));
}

std::string_view to_string(MixingKind kind) {
    return kind == MixingKind::VolumeAverage ? "volume-average" : "maxwell-garnett";
}

MixingKind parse_mixing_kind(std::string_view text) {
    if (text == "volume-average") return MixingKind::VolumeAverage;
    if (text == "maxwell-garnett") return MixingKind::MaxwellGarnett;
    throw DomainError(fmt::format("unknown mixing model '{}' (expected volume-average or maxwell-garnett)", text));
}

double eps_eff(double phi, const MixingModel& model) {
    if (!(phi >= 0.0 && phi <= 1.0)) throw DomainError(fmt::format("fill fraction {} outside [0, 1]", phi));
    if (!(model.eps_host > 1.0)) throw DomainError(fmt::format("host permittivity must exceed 1 (got {})", model.eps_host));
    const double eh = model.eps_host;
    switch (model.kind) {
        case MixingKind::VolumeAverage:
            return 1.0 + phi * (eh - 1.0);
        case MixingKind::MaxwellGarnett: {
            // Air inclusions (eps = 1) at volume fraction 1 - phi in a resin host.
            const double f = 1.0 - phi;
            const double d = 1.0 - eh;
            return eh * (1.0 + 2.0 * eh + 2.0 * f * d) / (1.0 + 2.0 * eh - f * d);
        }
    }
    return 0.0;
}

double threshold_for_eps(double eps_target, const MixingModel& model, const FillTable& table) {
    if (!(eps_target >= 1.0 && eps_target <= model.eps_host))
        throw UnreachablePermittivity(
            fmt::format("permittivity {} not reachable with host {} (range [1, {}])", eps_target,
                        model.eps_host, model.eps_host));
    auto eps_at = [&](double t) { return eps_eff(std::clamp(table.phi(t), 0.0, 1.0), model); };
    if (eps_target <= eps_at(0.0)) return 0.0;
    if (eps_target >= eps_at(kGyroidMax)) return kGyroidMax;
    double lo = 0.0;
    double hi = kGyroidMax;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double e = eps_at(mid);
        if (std::fabs(e - eps_target) <= kEpsTolerance || hi - lo < 1e-14) return mid;
        (e < eps_target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace grin
