#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "grinlens/gyroid.hpp"
#include "grinlens/mesh.hpp"
#include "grinlens/profile.hpp"
#include "grinlens/vec3.hpp"

namespace grin {

struct CellIndex {
    int i = 0;
    int j = 0;
    int k = 0;
    auto operator<=>(const CellIndex&) const = default;
};

struct DesignSummary {
    int cells_across = 0;
    std::size_t active_cells = 0;
    double t_min = 0.0;
    double t_max = 0.0;
    double eps_min = 0.0;
    double eps_max = 0.0;
};

/// Cubic lattice of gyroid cells centred on the lens, one wall threshold per
/// cell. Cells that do not touch the lens sphere carry no threshold.
class LatticeDesign {
public:
    /// thresholds/eps are indexed i + n*(j + n*k); NaN marks an excluded cell.
    LatticeDesign(LensSpec spec, std::vector<double> thresholds, std::vector<double> eps);

    /// Same threshold in every cell touching the sphere; eps left unset (NaN).
    static LatticeDesign uniform(const LensSpec& spec, double threshold);

    [[nodiscard]] const LensSpec& spec() const { return spec_; }
    [[nodiscard]] int cells_across() const { return n_; }
    /// Edge length of the cubic region covered by the lattice.
    [[nodiscard]] double extent() const { return n_ * spec_.cell_m; }

    [[nodiscard]] Vec3 cell_center(CellIndex c) const;
    [[nodiscard]] std::optional<CellIndex> cell_of(const Vec3& p) const;
    [[nodiscard]] std::optional<double> threshold(CellIndex c) const;
    [[nodiscard]] std::optional<double> cell_eps(CellIndex c) const;
    /// Threshold of the cell holding p, NaN if none.
    [[nodiscard]] double threshold_at(const Vec3& p) const;

    [[nodiscard]] std::vector<CellIndex> active_cells() const;
    [[nodiscard]] DesignSummary summary() const;

    /// Number of cells across a lens: ceil(D / l_uc).
    static int cells_across(const LensSpec& spec);
    /// Whether the cell touches the open ball of radius R.
    static bool touches_sphere(const LensSpec& spec, CellIndex c);
    /// Squared centre radius in units of (l_uc / 2)^2; exact integer.
    static long long center_radius_key(int n, CellIndex c);

private:
    [[nodiscard]] std::size_t flat(CellIndex c) const;

    LensSpec spec_;
    int n_;
    std::vector<double> thresholds_;
    std::vector<double> eps_;
};

/// Samples the clamped profile at every cell centre and converts it to a
/// wall threshold. Cells whose centre lies past the lens surface but that
/// still touch the sphere take the floor permittivity.
LatticeDesign rasterize(const LensSpec& spec, const PermittivityProfile& profile, const MixingModel& model,
                        const FillTable& table);

/// |p| <= R and |g(p)| <= t(cell containing p), one global gyroid phase.
bool solid_indicator(const Vec3& p, const LatticeDesign& design);

/// Signed function that is negative inside the printed solid.
double lens_signed_field(const Vec3& p, const LatticeDesign& design);

inline constexpr int kMinVoxelsPerCell = 16;
inline constexpr int kDefaultVoxelsPerCell = 64;

/// Watertight surface of the whole lens.
TriangleMesh extract_mesh(const LatticeDesign& design, int voxels_per_cell, unsigned workers = 0);

/// Watertight surface of one period cell [0, l)^3 of a uniform gyroid.
TriangleMesh extract_cell_mesh(const GyroidField& field, int voxels_per_cell, unsigned workers = 0);

}  // namespace grin
