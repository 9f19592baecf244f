#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "grinlens/constants.hpp"
#include "grinlens/errors.hpp"
#include "grinlens/lattice.hpp"

using namespace grin;

namespace {

const FillTable& golden_table() {
    static const FillTable table = [] {
        std::ifstream in(GRINLENS_DATA_DIR "/gyroid_fill_fraction.csv");
        return FillTable::read_csv(in, "gyroid_fill_fraction.csv");
    }();
    return table;
}

LensSpec spec_with_cell(double cell_m) {
    LensSpec s;
    s.cell_m = cell_m;
    return s;
}

LatticeDesign design_for(double cell_m) {
    const LensSpec spec = spec_with_cell(cell_m);
    return rasterize(spec, PermittivityProfile::clamped(spec.radius_m(), spec.eps_min), MixingModel{}, golden_table());
}

std::string stl_bytes(const TriangleMesh& mesh) {
    std::ostringstream out(std::ios::binary);
    write_stl(mesh, out);
    return out.str();
}

// Seeded Monte-Carlo solid fraction of [0, l)^3 using is_solid.
double mc_cell_fraction(const GyroidField& f, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, f.cell_m);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < n; ++s)
        if (is_solid({u(rng), u(rng), u(rng)}, f)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(n);
}

}  // namespace

TEST(Lattice, CellsAcross) {
    EXPECT_EQ(LatticeDesign::cells_across(spec_with_cell(12.5e-3)), 8);
    EXPECT_EQ(LatticeDesign::cells_across(spec_with_cell(10e-3)), 10);
    EXPECT_EQ(LatticeDesign::cells_across(spec_with_cell(7.5e-3)), 14);
    EXPECT_EQ(LatticeDesign::cells_across(spec_with_cell(5e-3)), 20);
}

TEST(Rasterize, CentreCellAndClampedShell) {
    const auto design = design_for(12.5e-3);
    const double radius = 0.05;
    const MixingModel model;
    const CellIndex centre{4, 4, 4};
    const double rc = design.cell_center(centre).norm();
    EXPECT_NEAR(rc, std::sqrt(3.0) * 6.25e-3, 1e-15);
    const double eps_c = eval_clamped(rc, radius, 1.2);
    EXPECT_NEAR(eps_c, 2.0, 0.05);
    EXPECT_DOUBLE_EQ(*design.threshold(centre), threshold_for_eps(eps_c, model, golden_table()));
    EXPECT_DOUBLE_EQ(*design.cell_eps(centre), eps_c);

    const double t_floor = threshold_for_eps(1.2, model, golden_table());
    const double r_clamp = clamp_radius(radius, 1.2);
    std::size_t shell = 0;
    for (const auto c : design.active_cells()) {
        if (design.cell_center(c).norm() >= r_clamp) {
            EXPECT_DOUBLE_EQ(*design.threshold(c), t_floor);
            ++shell;
        }
    }
    EXPECT_GT(shell, 0u);
}

TEST(Rasterize, InvariantsAcrossCellSizes) {
    const double t_floor = threshold_for_eps(1.2, MixingModel{}, golden_table());
    for (double cell : {5e-3, 7.5e-3, 10e-3, 12.5e-3}) {
        const auto design = design_for(cell);
        const int n = design.cells_across();
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    const CellIndex c{i, j, k};
                    const auto t = design.threshold(c);
                    if (design.cell_center(c).norm() < 0.05) EXPECT_TRUE(t.has_value());
                    if (!t) continue;
                    EXPECT_GE(*t, t_floor);
                    EXPECT_LE(*t, 1.5);
                    // Sign flips and axis permutations of the centre.
                    const int m = n - 1;
                    const std::array<CellIndex, 5> images{CellIndex{m - i, j, k}, CellIndex{i, m - j, k},
                                                          CellIndex{i, j, m - k}, CellIndex{j, k, i},
                                                          CellIndex{k, i, j}};
                    for (const auto& img : images) EXPECT_EQ(design.threshold(img), t);
                    EXPECT_EQ(design.threshold({j, i, k}), t);
                }
    }
}

TEST(Rasterize, EqualCentreRadiusSharesThreshold) {
    const auto design = design_for(7.5e-3);
    std::map<double, double> seen;
    for (const auto c : design.active_cells()) {
        const double r = design.cell_center(c).norm();
        for (const auto& [r0, t0] : seen)
            if (std::fabs(r - r0) < 1e-9) EXPECT_EQ(*design.threshold(c), t0);
        seen.emplace(r, *design.threshold(c));
    }
}

TEST(Rasterize, Errors) {
    EXPECT_THROW(design_for(0.0), ValidationError);
    EXPECT_THROW(design_for(0.2), ValidationError);
    // A weak host cannot reach the profile's centre permittivity.
    LensSpec weak;
    weak.eps_host = 1.5;
    EXPECT_THROW(rasterize(weak, PermittivityProfile::clamped(0.05, 1.2), {MixingKind::VolumeAverage, 1.5}, golden_table()),
                 UnreachablePermittivity);
}

TEST(SolidIndicator, Examples) {
    const auto design = design_for(10e-3);
    EXPECT_FALSE(solid_indicator({0.0, 0.0, 0.051}, design));
    EXPECT_FALSE(solid_indicator({0.2, 0.0, 0.0}, design));
    EXPECT_TRUE(solid_indicator({0.0, 0.0, 0.0}, design));
}

TEST(SolidIndicator, AgreesWithPerCellIsSolid) {
    const auto design = design_for(7.5e-3);
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> d(-0.05, 0.05);
    int checked = 0;
    while (checked < 100'000) {
        const Vec3 p{d(rng), d(rng), d(rng)};
        if (p.norm() > 0.05) continue;
        ++checked;
        const auto cell = design.cell_of(p);
        ASSERT_TRUE(cell.has_value());
        const GyroidField f{7.5e-3, *design.threshold(*cell), {}};
        ASSERT_EQ(solid_indicator(p, design), is_solid(p, f));
        ASSERT_EQ(solid_indicator(p, design), lens_signed_field(p, design) <= 0.0);
    }
}

TEST(ExtractMesh, EmptySolidGivesNoTriangles) {
    const auto design = LatticeDesign::uniform(spec_with_cell(12.5e-3), 0.0);
    const auto mesh = extract_mesh(design, kMinVoxelsPerCell, 1);
    EXPECT_TRUE(mesh.empty());
    EXPECT_EQ(stl_bytes(mesh).size(), 84u);
    EXPECT_THROW(extract_mesh(design, kMinVoxelsPerCell - 1), DomainError);
}

TEST(ExtractCellMesh, VolumeMatchesFillFraction) {
    const double l = 0.01;
    for (double t : {0.3, 0.6, 0.9, 1.2}) {
        const GyroidField f{l, t, {}};
        const auto mesh = extract_cell_mesh(f, 64);
        const auto topo = mesh.topology();
        EXPECT_TRUE(topo.consistently_oriented()) << "t = " << t;
        const double expected = golden_table().phi(t) * l * l * l;
        EXPECT_NEAR(mesh.signed_volume(), expected, 0.01 * expected) << "t = " << t;
        const double mc = mc_cell_fraction(f, 1'000'000, 7) * l * l * l;
        EXPECT_NEAR(mesh.signed_volume(), mc, 0.01 * mc) << "t = " << t;
    }
}

TEST(ExtractMesh, DeterministicAcrossWorkers) {
    const auto design = design_for(12.5e-3);
    const std::string one = stl_bytes(extract_mesh(design, kMinVoxelsPerCell, 1));
    EXPECT_EQ(stl_bytes(extract_mesh(design, kMinVoxelsPerCell, 2)), one);
    EXPECT_EQ(stl_bytes(extract_mesh(design, kMinVoxelsPerCell, 8)), one);
    EXPECT_EQ(stl_bytes(extract_mesh(design, kMinVoxelsPerCell, 1)), one);
}

TEST(ExtractMesh, UniformLatticesAreWatertight) {
    for (double t : {0.3, 0.9}) {
        const auto design = LatticeDesign::uniform(spec_with_cell(12.5e-3), t);
        const auto mesh = extract_mesh(design, 24, 0);
        EXPECT_TRUE(mesh.topology().consistently_oriented()) << "t = " << t;
        EXPECT_GT(mesh.signed_volume(), 0.0);
    }
}

TEST(ExtractMesh, FullLensTenMillimetreCell) {
    const auto design = design_for(10e-3);
    const auto mesh = extract_mesh(design, 32);
    EXPECT_TRUE(mesh.topology().consistently_oriented());
    const double sphere = 4.0 / 3.0 * kPi * std::pow(0.05, 3);
    EXPECT_GT(mesh.signed_volume(), 0.0);
    EXPECT_LT(mesh.signed_volume(), sphere);
    for (const auto& v : mesh.vertices) EXPECT_LE(v.norm(), 0.05 * (1.0 + 1e-9));
}
