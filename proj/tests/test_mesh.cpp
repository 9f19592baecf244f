#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "grinlens/constants.hpp"
#include "grinlens/errors.hpp"
#include "grinlens/marching_cubes.hpp"
#include "grinlens/mesh.hpp"

using namespace grin;

namespace {

TriangleMesh unit_tetrahedron() {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    m.triangles = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
    return m;
}

std::string stl_bytes(const TriangleMesh& mesh) {
    std::ostringstream out(std::ios::binary);
    write_stl(mesh, out);
    return out.str();
}

float read_f32(const std::string& bytes, std::size_t offset) {
    unsigned char b[4];
    std::memcpy(b, bytes.data() + offset, 4);
    const std::uint32_t u = b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    float f;
    std::memcpy(&f, &u, 4);
    return f;
}

// Nodes of a grid with random interior values and a positive boundary layer.
struct NoiseField {
    int n;
    std::vector<double> values;

    NoiseField(int n_nodes, std::uint64_t seed) : n(n_nodes), values(static_cast<std::size_t>(n) * n * n) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    const bool edge = i == 0 || j == 0 || k == 0 || i == n - 1 || j == n - 1 || k == n - 1;
                    values[i + n * (j + n * k)] = edge ? 1.0 : d(rng);
                }
    }

    double operator()(const Vec3& p) const {
        const int i = static_cast<int>(std::lround(p.x));
        const int j = static_cast<int>(std::lround(p.y));
        const int k = static_cast<int>(std::lround(p.z));
        return values[i + n * (j + n * k)];
    }
};

}  // namespace

TEST(TriangleMesh, TetrahedronMeasures) {
    const auto m = unit_tetrahedron();
    EXPECT_NEAR(m.signed_volume(), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(m.surface_area(), 1.5 + std::sqrt(3.0) / 2.0, 1e-12);
    const auto topo = m.topology();
    EXPECT_EQ(topo.edges, 6u);
    EXPECT_TRUE(topo.watertight());
    EXPECT_TRUE(topo.consistently_oriented());
    EXPECT_NEAR(m.normal(0).z, -1.0, 1e-15);
}

TEST(TriangleMesh, DetectsDefects) {
    auto m = unit_tetrahedron();
    std::swap(m.triangles[3][0], m.triangles[3][1]);
    EXPECT_TRUE(m.topology().watertight());
    EXPECT_FALSE(m.topology().consistently_oriented());
    m.triangles.pop_back();
    EXPECT_EQ(m.topology().boundary_edges, 3u);
    EXPECT_FALSE(m.topology().watertight());
}

TEST(Stl, ByteLayout) {
    EXPECT_EQ(stl_bytes({}).size(), 84u);
    TriangleMesh two = unit_tetrahedron();
    two.triangles.resize(2);
    const std::string bytes = stl_bytes(two);
    ASSERT_EQ(bytes.size(), 184u);
    EXPECT_EQ(bytes.substr(0, 14), "grinlens 1.0.0");
    for (std::size_t i = 14; i < 80; ++i) EXPECT_EQ(bytes[i], '\0');
    EXPECT_EQ(static_cast<unsigned char>(bytes[80]), 2);
    EXPECT_EQ(bytes.substr(81, 3), std::string(3, '\0'));
    // First triangle: normal (0,0,-1), vertices (0,0,0), (0,1,0), (1,0,0).
    EXPECT_EQ(read_f32(bytes, 84 + 8), -1.0f);
    EXPECT_EQ(read_f32(bytes, 84 + 12 + 12 + 4), 1.0f);
    EXPECT_EQ(read_f32(bytes, 84 + 12 + 24), 1.0f);
    EXPECT_EQ(bytes.substr(84 + 48, 2), std::string(2, '\0'));
    EXPECT_EQ(stl_bytes(two), bytes);
}

TEST(Stl, ExportWritesFileAndReportsUnwritablePath) {
    const auto dir = std::filesystem::temp_directory_path() / "grinlens_test_mesh";
    std::filesystem::create_directories(dir);
    const auto path = dir / "tet.stl";
    EXPECT_EQ(export_stl(unit_tetrahedron(), path), 84u + 4 * 50u);
    EXPECT_EQ(std::filesystem::file_size(path), 284u);
    EXPECT_THROW(export_stl(unit_tetrahedron(), dir / "missing" / "tet.stl"), IoError);
    std::filesystem::remove_all(dir);
}

TEST(MeshStats, CsvRow) {
    const auto stats = mesh_stats(unit_tetrahedron());
    EXPECT_EQ(stats.n_triangles, 4u);
    EXPECT_TRUE(stats.watertight);
    std::ostringstream out;
    write_mesh_stats_csv(stats, out);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "n_vertices,n_triangles,area_m2,volume_m3,watertight");
}

TEST(MarchingCubes, SphereVolumeAndClosure) {
    const double r = 0.8;
    const int n = 50;
    const double h = 2.0 / (n - 1);
    const SampleGrid grid{{-1, -1, -1}, h, {n, n, n}};
    const auto mesh = marching_cubes([r](const Vec3& p) { return p.norm() - r; }, grid, 1);
    EXPECT_TRUE(mesh.topology().consistently_oriented());
    const double exact = 4.0 / 3.0 * kPi * r * r * r;
    EXPECT_NEAR(mesh.signed_volume(), exact, 0.01 * exact);
    EXPECT_LT(mesh.signed_volume(), exact);
    for (const auto& v : mesh.vertices) EXPECT_NEAR(v.norm(), r, h);
}

TEST(MarchingCubes, EmptyAndFullInteriors) {
    const SampleGrid grid{{0, 0, 0}, 1.0, {6, 6, 6}};
    EXPECT_TRUE(marching_cubes([](const Vec3&) { return 1.0; }, grid).empty());
    EXPECT_TRUE(marching_cubes([](const Vec3&) { return 0.0; }, grid).empty());
    const auto box = marching_cubes(
        [](const Vec3& p) { return std::max({0.5 - p.x, p.x - 4.5, 0.5 - p.y, p.y - 4.5, 0.5 - p.z, p.z - 4.5}); },
        grid);
    EXPECT_TRUE(box.topology().consistently_oriented());
    // Edges and corners are chamfered, faces are exact.
    EXPECT_GT(box.signed_volume(), 27.0);
    EXPECT_LT(box.signed_volume(), 64.0);
}

TEST(MarchingCubesProperty, RandomFieldsAreClosedAndOriented) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const NoiseField noise(9, seed);
        const SampleGrid grid{{0, 0, 0}, 1.0, {9, 9, 9}};
        const auto mesh = marching_cubes(std::cref(noise), grid, 1);
        const auto topo = mesh.topology();
        EXPECT_TRUE(topo.consistently_oriented()) << "seed " << seed << " boundary " << topo.boundary_edges
                                                  << " nonmanifold " << topo.nonmanifold_edges << " misoriented "
                                                  << topo.misoriented_edges;
        EXPECT_GT(mesh.signed_volume(), 0.0);
        for (const auto& t : mesh.triangles) {
            EXPECT_NE(t[0], t[1]);
            EXPECT_NE(t[1], t[2]);
            EXPECT_NE(t[0], t[2]);
        }
    }
}

TEST(MarchingCubesProperty, WorkerCountDoesNotChangeOutput) {
    const NoiseField noise(23, 99);
    const SampleGrid grid{{0, 0, 0}, 1.0, {23, 23, 23}};
    const std::string one = stl_bytes(marching_cubes(std::cref(noise), grid, 1));
    EXPECT_EQ(stl_bytes(marching_cubes(std::cref(noise), grid, 2)), one);
    EXPECT_EQ(stl_bytes(marching_cubes(std::cref(noise), grid, 8)), one);
}
