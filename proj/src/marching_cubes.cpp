#include "grinlens/marching_cubes.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "grinlens/errors.hpp"
#include "grinlens/parallel.hpp"

namespace grin {

namespace {

constexpr int kSlabLayers = 4;
constexpr std::uint64_t kCentroidBit = std::uint64_t{1} << 63;

// Corner c has offset (c & 1, (c >> 1) & 1, (c >> 2) & 1).
// Each face lists its corners counter-clockwise seen from outside the cube.
constexpr int kFaceCorners[6][4] = {
    {0, 4, 6, 2},  // -x
    {1, 3, 7, 5},  // +x
    {0, 1, 5, 4},  // -y
    {2, 6, 7, 3},  // +y
    {0, 2, 3, 1},  // -z
    {4, 5, 7, 6},  // +z
};

struct CubeEdge {
    int lo = 0;  // corner with the varying bit clear
    int axis = 0;
    unsigned face_mask = 0;
};

struct EdgeTables {
    int id[8][8];
    CubeEdge edges[12];
};

constexpr EdgeTables make_edge_tables() {
    EdgeTables t{};
    for (auto& row : t.id)
        for (int& v : row) v = -1;
    int n = 0;
    for (int c = 0; c < 8; ++c) {
        for (int axis = 0; axis < 3; ++axis) {
            if (c & (1 << axis)) continue;
            const int d = c | (1 << axis);
            unsigned mask = 0;
            for (int other = 0; other < 3; ++other) {
                if (other == axis) continue;
                const int side = (c >> other) & 1;
                mask |= 1u << (other * 2 + side);
            }
            t.edges[n] = {c, axis, mask};
            t.id[c][d] = n;
            t.id[d][c] = n;
            ++n;
        }
    }
    return t;
}

constexpr EdgeTables kEdges = make_edge_tables();

struct SlabOutput {
    std::vector<std::array<std::uint64_t, 3>> triangles;
    std::unordered_map<std::uint64_t, Vec3> positions;
};

class SlabMesher {
public:
    SlabMesher(const ScalarField& field, const SampleGrid& grid, int z_begin, int z_end)
        : field_(field), grid_(grid), z_begin_(z_begin), z_end_(z_end) {}

    SlabOutput run() {
        sample();
        const int nx = grid_.nodes[0];
        const int ny = grid_.nodes[1];
        for (int z = z_begin_; z < z_end_; ++z)
            for (int y = 0; y + 1 < ny; ++y)
                for (int x = 0; x + 1 < nx; ++x) polygonize(x, y, z);
        return std::move(out_);
    }

private:
    [[nodiscard]] Vec3 node_position(int x, int y, int z) const {
        return grid_.origin + Vec3{static_cast<double>(x), static_cast<double>(y), static_cast<double>(z)} * grid_.spacing;
    }

    [[nodiscard]] double node_value(int x, int y, int z) const {
        const auto nx = static_cast<std::size_t>(grid_.nodes[0]);
        const auto ny = static_cast<std::size_t>(grid_.nodes[1]);
        return values_[static_cast<std::size_t>(x) + nx * (static_cast<std::size_t>(y) + ny * static_cast<std::size_t>(z - z_begin_))];
    }

    [[nodiscard]] std::uint64_t node_index(int x, int y, int z) const {
        const auto nx = static_cast<std::uint64_t>(grid_.nodes[0]);
        const auto ny = static_cast<std::uint64_t>(grid_.nodes[1]);
        return static_cast<std::uint64_t>(x) + nx * (static_cast<std::uint64_t>(y) + ny * static_cast<std::uint64_t>(z));
    }

    void sample() {
        const int nx = grid_.nodes[0];
        const int ny = grid_.nodes[1];
        values_.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
                       static_cast<std::size_t>(z_end_ - z_begin_ + 1));
        std::size_t i = 0;
        for (int z = z_begin_; z <= z_end_; ++z)
            for (int y = 0; y < ny; ++y)
                for (int x = 0; x < nx; ++x) values_[i++] = field_(node_position(x, y, z));
    }

    // Vertex on a cube edge, always interpolated from the lower node so that
    // every cube sharing the edge produces identical coordinates.
    std::uint64_t edge_vertex(int x, int y, int z, int local_edge) {
        const CubeEdge& e = kEdges.edges[local_edge];
        const int x0 = x + (e.lo & 1);
        const int y0 = y + ((e.lo >> 1) & 1);
        const int z0 = z + ((e.lo >> 2) & 1);
        const std::uint64_t key = node_index(x0, y0, z0) * 3 + static_cast<std::uint64_t>(e.axis);
        if (out_.positions.find(key) == out_.positions.end()) {
            const int x1 = x0 + (e.axis == 0);
            const int y1 = y0 + (e.axis == 1);
            const int z1 = z0 + (e.axis == 2);
            const double f0 = node_value(x0, y0, z0);
            const double f1 = node_value(x1, y1, z1);
            const double s = f0 / (f0 - f1);
            const Vec3 p0 = node_position(x0, y0, z0);
            const Vec3 p1 = node_position(x1, y1, z1);
            out_.positions.emplace(key, p0 + (p1 - p0) * s);
        }
        return key;
    }

    void polygonize(int x, int y, int z) {
        double v[8];
        unsigned inside_mask = 0;
        for (int c = 0; c < 8; ++c) {
            v[c] = node_value(x + (c & 1), y + ((c >> 1) & 1), z + ((c >> 2) & 1));
            if (v[c] < 0.0) inside_mask |= 1u << c;
        }
        if (inside_mask == 0 || inside_mask == 0xFFu) return;

        int next[12];
        for (int& n : next) n = -1;
        auto inside = [&](int c) { return ((inside_mask >> c) & 1u) != 0; };
        // Links the two crossings around face corner i, directed from the
        // crossing entering the solid to the one leaving it.
        auto link_around = [&](const int* fc, int i) {
            const int prev = fc[(i + 3) % 4];
            const int cur = fc[i];
            const int nxt = fc[(i + 1) % 4];
            const int e_in = kEdges.id[prev][cur];
            const int e_out = kEdges.id[cur][nxt];
            if (inside(cur)) next[e_in] = e_out;  // prev -> cur enters
            else next[e_out] = e_in;              // cur -> nxt enters
        };

        for (const auto& fc : kFaceCorners) {
            int n_in = 0;
            for (int i = 0; i < 4; ++i) n_in += inside(fc[i]);
            if (n_in == 0 || n_in == 4) continue;
            const bool diagonal = n_in == 2 && inside(fc[0]) == inside(fc[2]);
            if (n_in == 2 && !diagonal) {
                int enter = -1;
                int leave = -1;
                for (int i = 0; i < 4; ++i) {
                    const int a = fc[i];
                    const int b = fc[(i + 1) % 4];
                    if (inside(a) == inside(b)) continue;
                    (inside(b) ? enter : leave) = kEdges.id[a][b];
                }
                next[enter] = leave;
                continue;
            }
            if (n_in != 2) {
                // One corner differs from the other three.
                const bool odd_inside = n_in == 1;
                for (int i = 0; i < 4; ++i)
                    if (inside(fc[i]) == odd_inside) link_around(fc, i);
                continue;
            }
            // Asymptotic decider: the inside corners connect through the face
            // centre when the bilinear saddle value is negative.
            const double in_prod = inside(fc[0]) ? v[fc[0]] * v[fc[2]] : v[fc[1]] * v[fc[3]];
            const double out_prod = inside(fc[0]) ? v[fc[1]] * v[fc[3]] : v[fc[0]] * v[fc[2]];
            const bool cut_outside_corners = in_prod > out_prod;
            for (int i = 0; i < 4; ++i)
                if (inside(fc[i]) != cut_outside_corners) link_around(fc, i);
        }

        const std::uint64_t cube_index = node_index(x, y, z);
        bool visited[12] = {};
        std::uint64_t loop_keys[12];
        int loop_edges[12];
        int loop_no = 0;
        for (int start = 0; start < 12; ++start) {
            if (next[start] < 0 || visited[start]) continue;
            int n = 0;
            for (int e = start; !visited[e]; e = next[e]) {
                visited[e] = true;
                loop_edges[n] = e;
                loop_keys[n] = edge_vertex(x, y, z, e);
                ++n;
            }
            emit_loop(loop_keys, loop_edges, n, cube_index, loop_no++);
        }
    }

    void emit_loop(const std::uint64_t* keys, const int* edges, int n, std::uint64_t cube_index, int loop_no) {
        if (n < 3) throw std::logic_error("marching cubes produced a degenerate loop");
        if (n == 3) {
            out_.triangles.push_back({keys[0], keys[1], keys[2]});
            return;
        }
        if (n == 4) {
            // A diagonal is private to this cube unless both ends lie on one cube face.
            auto private_diagonal = [&](int a, int b) {
                return (kEdges.edges[edges[a]].face_mask & kEdges.edges[edges[b]].face_mask) == 0;
            };
            if (private_diagonal(0, 2)) {
                out_.triangles.push_back({keys[0], keys[1], keys[2]});
                out_.triangles.push_back({keys[0], keys[2], keys[3]});
                return;
            }
            if (private_diagonal(1, 3)) {
                out_.triangles.push_back({keys[1], keys[2], keys[3]});
                out_.triangles.push_back({keys[1], keys[3], keys[0]});
                return;
            }
        }
        Vec3 centroid{};
        for (int i = 0; i < n; ++i) centroid += out_.positions.at(keys[i]);
        centroid = centroid / static_cast<double>(n);
        const std::uint64_t c_key = kCentroidBit | (cube_index * 4 + static_cast<std::uint64_t>(loop_no));
        out_.positions.emplace(c_key, centroid);
        for (int i = 0; i < n; ++i) out_.triangles.push_back({c_key, keys[i], keys[(i + 1) % n]});
    }

    const ScalarField& field_;
    const SampleGrid& grid_;
    int z_begin_;
    int z_end_;
    std::vector<double> values_;
    SlabOutput out_;
};

}  // namespace

TriangleMesh marching_cubes(const ScalarField& field, const SampleGrid& grid, unsigned workers) {
    for (int n : grid.nodes)
        if (n < 2) throw DomainError("sample grid needs at least two nodes per axis");
    if (!(grid.spacing > 0.0)) throw DomainError("sample grid spacing must be > 0");

    const int cube_layers = grid.nodes[2] - 1;
    const int n_slabs = (cube_layers + kSlabLayers - 1) / kSlabLayers;
    std::vector<SlabOutput> slabs(static_cast<std::size_t>(n_slabs));
    parallel_for(slabs.size(), workers, [&](std::size_t s) {
        const int z0 = static_cast<int>(s) * kSlabLayers;
        const int z1 = std::min(cube_layers, z0 + kSlabLayers);
        slabs[s] = SlabMesher(field, grid, z0, z1).run();
    });

    TriangleMesh mesh;
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    for (auto& slab : slabs) {
        for (const auto& tri : slab.triangles) {
            TriangleMesh::Triangle t{};
            for (int k = 0; k < 3; ++k) {
                auto [it, inserted] = index.try_emplace(tri[k], static_cast<std::uint32_t>(mesh.vertices.size()));
                if (inserted) mesh.vertices.push_back(slab.positions.at(tri[k]));
                t[k] = it->second;
            }
            mesh.triangles.push_back(t);
        }
        slab = SlabOutput{};
    }
    return mesh;
}

}  // namespace grin
