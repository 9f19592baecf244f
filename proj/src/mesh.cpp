#include "grinlens/mesh.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <ostream>
#include <string>
#include <unordered_map>

#include <fmt/format.h>

#include "grinlens/constants.hpp"
#include "grinlens/errors.hpp"

namespace grin {

namespace {

void put_u32(char* dst, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) dst[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
}

void put_f32(char* dst, double v) { put_u32(dst, std::bit_cast<std::uint32_t>(static_cast<float>(v))); }

}  // namespace

double TriangleMesh::surface_area() const {
    double area = 0.0;
    for (const auto& t : triangles) {
        const Vec3& a = vertices[t[0]];
        area += 0.5 * (vertices[t[1]] - a).cross(vertices[t[2]] - a).norm();
    }
    return area;
}

double TriangleMesh::signed_volume() const {
    double six_v = 0.0;
    for (const auto& t : triangles) six_v += vertices[t[0]].dot(vertices[t[1]].cross(vertices[t[2]]));
    return six_v / 6.0;
}

Vec3 TriangleMesh::normal(std::size_t triangle) const {
    const auto& t = triangles[triangle];
    const Vec3& a = vertices[t[0]];
    return (vertices[t[1]] - a).cross(vertices[t[2]] - a).normalized();
}

MeshTopology TriangleMesh::topology() const {
    // key = (min << 32) | max
    struct EdgeUse {
        std::uint32_t forward = 0;   // traversed min -> max
        std::uint32_t backward = 0;  // traversed max -> min
    };
    std::unordered_map<std::uint64_t, EdgeUse> edges;
    edges.reserve(triangles.size() * 3 / 2 + 1);
    for (const auto& t : triangles) {
        for (int e = 0; e < 3; ++e) {
            const std::uint32_t a = t[e];
            const std::uint32_t b = t[(e + 1) % 3];
            const std::uint64_t lo = std::min(a, b);
            const std::uint64_t hi = std::max(a, b);
            auto& use = edges[(lo << 32) | hi];
            (a < b ? use.forward : use.backward) += 1;
        }
    }
    MeshTopology topo;
    topo.edges = edges.size();
    for (const auto& [key, use] : edges) {
        const std::uint32_t n = use.forward + use.backward;
        if (n == 1) ++topo.boundary_edges;
        if (n > 2) ++topo.nonmanifold_edges;
        if (use.forward > 1 || use.backward > 1) ++topo.misoriented_edges;
    }
    return topo;
}

MeshStats mesh_stats(const TriangleMesh& mesh) {
    return {mesh.vertices.size(), mesh.triangles.size(), mesh.surface_area(), mesh.signed_volume(),
            mesh.topology().watertight()};
}

void write_mesh_stats_csv(const MeshStats& s, std::ostream& out) {
    out << "n_vertices,n_triangles,area_m2,volume_m3,watertight\n";
    out << fmt::format("{},{},{:.9e},{:.9e},{}\n", s.n_vertices, s.n_triangles, s.area_m2, s.volume_m3,
                       s.watertight ? "true" : "false");
}

std::size_t write_stl(const TriangleMesh& mesh, std::ostream& out) {
    char header[kStlHeaderBytes] = {};
    const std::string name = fmt::format("{} {}", kToolName, kToolVersion);
    std::memcpy(header, name.data(), std::min<std::size_t>(name.size(), 80));
    put_u32(header + 80, static_cast<std::uint32_t>(mesh.triangles.size()));
    out.write(header, sizeof header);

    char record[kStlTriangleBytes];
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        std::memset(record, 0, sizeof record);
        const Vec3 n = mesh.normal(i);
        const double values[12] = {
            n.x, n.y, n.z,
            mesh.vertices[mesh.triangles[i][0]].x, mesh.vertices[mesh.triangles[i][0]].y, mesh.vertices[mesh.triangles[i][0]].z,
            mesh.vertices[mesh.triangles[i][1]].x, mesh.vertices[mesh.triangles[i][1]].y, mesh.vertices[mesh.triangles[i][1]].z,
            mesh.vertices[mesh.triangles[i][2]].x, mesh.vertices[mesh.triangles[i][2]].y, mesh.vertices[mesh.triangles[i][2]].z,
        };
        for (int k = 0; k < 12; ++k) put_f32(record + 4 * k, values[k]);
        out.write(record, sizeof record);
    }
    return kStlHeaderBytes + kStlTriangleBytes * mesh.triangles.size();
}

std::size_t export_stl(const TriangleMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    const std::size_t bytes = write_stl(mesh, out);
    out.flush();
    if (!out) throw IoError(fmt::format("failed writing STL to '{}'", path.string()));
    return bytes;
}

}  // namespace grin
