#pragma once

#include <array>
#include <functional>

#include "grinlens/mesh.hpp"
#include "grinlens/vec3.hpp"

namespace grin {

/// Regular lattice of sample nodes: node (i, j, k) sits at origin + spacing * (i, j, k).
struct SampleGrid {
    Vec3 origin{};
    double spacing = 1.0;
    std::array<int, 3> nodes{2, 2, 2};
};

/// Signed function; the solid is where it is strictly negative.
using ScalarField = std::function<double(const Vec3&)>;

/// Marching cubes with edge-linear vertex placement.
///
/// Face ambiguities are settled by the asymptotic decider, which only reads
/// the four corner values of the shared face, so neighbouring cubes always
/// agree. Surface loops are traced from the per-face segments; triangles are
/// wound so normals point out of the solid. The output is closed whenever the
/// field is positive on the grid boundary.
///
/// Work is split into fixed slabs of z layers; triangles are emitted in slab
/// then scan order, so the mesh is identical for every worker count.
TriangleMesh marching_cubes(const ScalarField& field, const SampleGrid& grid, unsigned workers = 0);

}  // namespace grin
