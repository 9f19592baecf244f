#include "grinlens/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "grinlens/constants.hpp"
#include "grinlens/errors.hpp"
#include "grinlens/marching_cubes.hpp"

namespace grin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

int LatticeDesign::cells_across(const LensSpec& spec) {
    return static_cast<int>(std::ceil(spec.diameter_m / spec.cell_m - 1e-9));
}

long long LatticeDesign::center_radius_key(int n, CellIndex c) {
    // Doubled offsets from the lens centre are odd/even integers, so the key is exact.
    const long long a = 2LL * c.i + 1 - n;
    const long long b = 2LL * c.j + 1 - n;
    const long long d = 2LL * c.k + 1 - n;
    return a * a + b * b + d * d;
}

bool LatticeDesign::touches_sphere(const LensSpec& spec, CellIndex c) {
    const int n = cells_across(spec);
    auto gap = [n](int idx) {
        const long long a = std::llabs(2LL * idx + 1 - n);
        return std::max(0LL, a - 1);
    };
    const long long gi = gap(c.i), gj = gap(c.j), gk = gap(c.k);
    const double half = 0.5 * spec.cell_m;
    const double nearest2 = static_cast<double>(gi * gi + gj * gj + gk * gk) * half * half;
    return nearest2 < spec.radius_m() * spec.radius_m();
}

LatticeDesign::LatticeDesign(LensSpec spec, std::vector<double> thresholds, std::vector<double> eps)
    : spec_(spec), n_(cells_across(spec)), thresholds_(std::move(thresholds)), eps_(std::move(eps)) {
    const auto cells = static_cast<std::size_t>(n_) * n_ * n_;
    if (thresholds_.size() != cells || eps_.size() != cells)
        throw DomainError(fmt::format("lattice needs {} cells, got {} thresholds", cells, thresholds_.size()));
}

LatticeDesign LatticeDesign::uniform(const LensSpec& spec, double threshold) {
    spec.validate();
    const int n = cells_across(spec);
    const auto cells = static_cast<std::size_t>(n) * n * n;
    std::vector<double> t(cells, kNaN);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                if (touches_sphere(spec, {i, j, k}))
                    t[static_cast<std::size_t>(i) + n * (static_cast<std::size_t>(j) + n * static_cast<std::size_t>(k))] = threshold;
    return {spec, std::move(t), std::vector<double>(cells, kNaN)};
}

std::size_t LatticeDesign::flat(CellIndex c) const {
    return static_cast<std::size_t>(c.i) + n_ * (static_cast<std::size_t>(c.j) + n_ * static_cast<std::size_t>(c.k));
}

Vec3 LatticeDesign::cell_center(CellIndex c) const {
    const double h = 0.5 * spec_.cell_m;
    return {(2.0 * c.i + 1 - n_) * h, (2.0 * c.j + 1 - n_) * h, (2.0 * c.k + 1 - n_) * h};
}

std::optional<CellIndex> LatticeDesign::cell_of(const Vec3& p) const {
    const double half = 0.5 * extent();
    auto axis = [&](double v) { return static_cast<int>(std::floor((v + half) / spec_.cell_m)); };
    const CellIndex c{axis(p.x), axis(p.y), axis(p.z)};
    if (c.i < 0 || c.j < 0 || c.k < 0 || c.i >= n_ || c.j >= n_ || c.k >= n_) return std::nullopt;
    return c;
}

std::optional<double> LatticeDesign::threshold(CellIndex c) const {
    if (c.i < 0 || c.j < 0 || c.k < 0 || c.i >= n_ || c.j >= n_ || c.k >= n_) return std::nullopt;
    const double t = thresholds_[flat(c)];
    if (std::isnan(t)) return std::nullopt;
    return t;
}

std::optional<double> LatticeDesign::cell_eps(CellIndex c) const {
    if (!threshold(c)) return std::nullopt;
    const double e = eps_[flat(c)];
    if (std::isnan(e)) return std::nullopt;
    return e;
}

double LatticeDesign::threshold_at(const Vec3& p) const {
    const auto c = cell_of(p);
    if (!c) return kNaN;
    return thresholds_[flat(*c)];
}

std::vector<CellIndex> LatticeDesign::active_cells() const {
    std::vector<CellIndex> out;
    for (int k = 0; k < n_; ++k)
        for (int j = 0; j < n_; ++j)
            for (int i = 0; i < n_; ++i)
                if (!std::isnan(thresholds_[flat({i, j, k})])) out.push_back({i, j, k});
    return out;
}

DesignSummary LatticeDesign::summary() const {
    DesignSummary s;
    s.cells_across = n_;
    s.t_min = s.eps_min = std::numeric_limits<double>::infinity();
    s.t_max = s.eps_max = -std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < thresholds_.size(); ++idx) {
        if (std::isnan(thresholds_[idx])) continue;
        ++s.active_cells;
        s.t_min = std::min(s.t_min, thresholds_[idx]);
        s.t_max = std::max(s.t_max, thresholds_[idx]);
        if (!std::isnan(eps_[idx])) {
            s.eps_min = std::min(s.eps_min, eps_[idx]);
            s.eps_max = std::max(s.eps_max, eps_[idx]);
        }
    }
    if (s.active_cells == 0) s.t_min = s.t_max = kNaN;
    if (!(s.eps_min <= s.eps_max)) s.eps_min = s.eps_max = kNaN;
    return s;
}

LatticeDesign rasterize(const LensSpec& spec, const PermittivityProfile& profile, const MixingModel& model,
                        const FillTable& table) {
    spec.validate();
    if (std::fabs(profile.radius() - spec.radius_m()) > 1e-12 * spec.radius_m())
        throw DomainError(fmt::format("profile radius {} does not match lens radius {}", profile.radius(),
                                      spec.radius_m()));
    const int n = LatticeDesign::cells_across(spec);
    const auto cells = static_cast<std::size_t>(n) * n * n;
    std::vector<double> t(cells, kNaN);
    std::vector<double> eps(cells, kNaN);
    // Cells at the same centre radius share the key, hence the threshold.
    std::map<long long, std::pair<double, double>> by_radius;
    const double half = 0.5 * spec.cell_m;
    const double radius = spec.radius_m();
    std::size_t idx = 0;
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i, ++idx) {
                const CellIndex c{i, j, k};
                if (!LatticeDesign::touches_sphere(spec, c)) continue;
                const long long key = LatticeDesign::center_radius_key(n, c);
                auto it = by_radius.find(key);
                if (it == by_radius.end()) {
                    const double r = std::sqrt(static_cast<double>(key)) * half;
                    const double e = r < radius ? profile.eps(r) : profile.eps_min();
                    it = by_radius.emplace(key, std::pair{e, threshold_for_eps(e, model, table)}).first;
                }
                eps[idx] = it->second.first;
                t[idx] = it->second.second;
            }
        }
    }
    return {spec, std::move(t), std::move(eps)};
}

bool solid_indicator(const Vec3& p, const LatticeDesign& design) {
    if (p.norm() > design.spec().radius_m()) return false;
    const double t = design.threshold_at(p);
    if (std::isnan(t)) return false;
    return std::fabs(gyroid_value(p, design.spec().cell_m)) <= t;
}

double lens_signed_field(const Vec3& p, const LatticeDesign& design) {
    const double cell = design.spec().cell_m;
    // Lengths are scaled by the gyroid wavenumber so both terms have
    // comparable slopes and the sphere cut interpolates accurately.
    const double sphere = (p.norm() - design.spec().radius_m()) * (2.0 * kPi / cell);
    const double t = design.threshold_at(p);
    if (std::isnan(t)) return std::max(sphere, kGyroidMax);
    return std::max(sphere, std::fabs(gyroid_value(p, cell)) - t);
}

TriangleMesh extract_mesh(const LatticeDesign& design, int voxels_per_cell, unsigned workers) {
    if (voxels_per_cell < kMinVoxelsPerCell)
        throw DomainError(fmt::format("voxels_per_cell must be >= {} (got {})", kMinVoxelsPerCell, voxels_per_cell));
    const double h = design.spec().cell_m / voxels_per_cell;
    const int nodes = design.cells_across() * voxels_per_cell + 2;
    // Nodes sit at voxel centres with one padding layer, so cell faces fall
    // between nodes and the outermost layer is outside the sphere.
    const double o = -0.5 * design.extent() - 0.5 * h;
    const SampleGrid grid{{o, o, o}, h, {nodes, nodes, nodes}};
    return marching_cubes([&design](const Vec3& p) { return lens_signed_field(p, design); }, grid, workers);
}

TriangleMesh extract_cell_mesh(const GyroidField& field, int voxels_per_cell, unsigned workers) {
    if (voxels_per_cell < kMinVoxelsPerCell)
        throw DomainError(fmt::format("voxels_per_cell must be >= {} (got {})", kMinVoxelsPerCell, voxels_per_cell));
    const double l = field.cell_m;
    const double h = l / voxels_per_cell;
    const int nodes = voxels_per_cell + 2;
    const SampleGrid grid{{-0.5 * h, -0.5 * h, -0.5 * h}, h, {nodes, nodes, nodes}};
    const double scale = 2.0 * kPi / l;
    auto f = [&field, l, scale](const Vec3& p) {
        const double box = std::max({-p.x, p.x - l, -p.y, p.y - l, -p.z, p.z - l});
        return std::max(box * scale, std::fabs(field.value(p)) - field.threshold);
    };
    return marching_cubes(f, grid, workers);
}

}  // namespace grin
