#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "grinlens/vec3.hpp"

namespace grin {

struct MeshTopology {
    std::size_t edges = 0;
    std::size_t boundary_edges = 0;     // used by one triangle
    std::size_t nonmanifold_edges = 0;  // used by three or more
    std::size_t misoriented_edges = 0;  // directed edge repeated
    [[nodiscard]] bool watertight() const { return boundary_edges == 0 && nonmanifold_edges == 0; }
    [[nodiscard]] bool consistently_oriented() const { return watertight() && misoriented_edges == 0; }
};

/// Indexed triangle surface, vertices in meters.
struct TriangleMesh {
    using Triangle = std::array<std::uint32_t, 3>;

    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;

    [[nodiscard]] bool empty() const { return triangles.empty(); }
    [[nodiscard]] double surface_area() const;
    /// Divergence-theorem volume; positive for outward-facing triangles.
    [[nodiscard]] double signed_volume() const;
    [[nodiscard]] MeshTopology topology() const;
    [[nodiscard]] Vec3 normal(std::size_t triangle) const;
};

struct MeshStats {
    std::size_t n_vertices = 0;
    std::size_t n_triangles = 0;
    double area_m2 = 0.0;
    double volume_m3 = 0.0;
    bool watertight = false;
};

MeshStats mesh_stats(const TriangleMesh& mesh);

/// Header n_vertices,n_triangles,area_m2,volume_m3,watertight plus one row.
void write_mesh_stats_csv(const MeshStats& stats, std::ostream& out);

inline constexpr std::size_t kStlHeaderBytes = 84;
inline constexpr std::size_t kStlTriangleBytes = 50;

/// Binary little-endian STL. Returns the number of bytes written.
std::size_t write_stl(const TriangleMesh& mesh, std::ostream& out);

/// Throws IoError when the path cannot be written.
std::size_t export_stl(const TriangleMesh& mesh, const std::filesystem::path& path);

}  // namespace grin
