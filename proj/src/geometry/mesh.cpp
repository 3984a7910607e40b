#include "sqgrasp/geometry/mesh.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_map>

#include "sqgrasp/common/error.hpp"

namespace sqgrasp {

namespace {

// Quantized-coordinate key for duplicate-vertex merging.
struct CellKey {
    std::int64_t x, y, z;
    bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::int64_t v : {k.x, k.y, k.z}) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

void TriangleMesh::compute_vertex_normals() {
    vertex_normals.assign(vertices.size(), Eigen::Vector3d::Zero());
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const Eigen::Vector3d weighted = triangle_cross(t);  // area-weighted
        for (int c = 0; c < 3; ++c) vertex_normals[triangles[t][c]] += weighted;
    }
    for (auto& n : vertex_normals) {
        const double len = n.norm();
        if (len > 0) n /= len;
    }
}

void TriangleMesh::analyze_topology() {
    std::map<std::pair<std::int32_t, std::int32_t>, int> edge_count;
    for (const auto& tri : triangles) {
        for (int c = 0; c < 3; ++c) {
            std::int32_t a = tri[c];
            std::int32_t b = tri[(c + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_count[{a, b}];
        }
    }
    boundary_edge_count = 0;
    bool all_two = !edge_count.empty();
    for (const auto& [edge, count] : edge_count) {
        if (count == 1) ++boundary_edge_count;
        if (count != 2) all_two = false;
    }
    watertight = all_two;
}

TriangleMesh TriangleMesh::cleaned(std::vector<Eigen::Vector3d> in_vertices,
                                   std::vector<std::array<std::int32_t, 3>> in_triangles,
                                   double merge_tol, double area_min) {
    TriangleMesh mesh;
    const double cell = merge_tol > 0 ? merge_tol : 1e-30;
    std::unordered_map<CellKey, std::int32_t, CellKeyHash> lookup;
    std::vector<std::int32_t> remap(in_vertices.size());

    auto key_of = [cell](const Eigen::Vector3d& v) {
        return CellKey{static_cast<std::int64_t>(std::floor(v.x() / cell)),
                       static_cast<std::int64_t>(std::floor(v.y() / cell)),
                       static_cast<std::int64_t>(std::floor(v.z() / cell))};
    };

    for (std::size_t i = 0; i < in_vertices.size(); ++i) {
        const Eigen::Vector3d& v = in_vertices[i];
        if (!v.allFinite()) throw FormatError("mesh vertex with non-finite coordinates");
        const CellKey base = key_of(v);
        std::int32_t found = -1;
        // probe the 27 neighbor cells so near-boundary duplicates still merge
        for (std::int64_t dx = -1; dx <= 1 && found < 0; ++dx)
            for (std::int64_t dy = -1; dy <= 1 && found < 0; ++dy)
                for (std::int64_t dz = -1; dz <= 1 && found < 0; ++dz) {
                    const auto it = lookup.find({base.x + dx, base.y + dy, base.z + dz});
                    if (it != lookup.end() &&
                        (mesh.vertices[it->second] - v).norm() <= merge_tol) {
                        found = it->second;
                    }
                }
        if (found < 0) {
            found = static_cast<std::int32_t>(mesh.vertices.size());
            mesh.vertices.push_back(v);
            lookup.emplace(base, found);
        }
        remap[i] = found;
    }

    mesh.triangles.reserve(in_triangles.size());
    const auto vertex_count = static_cast<std::int32_t>(in_vertices.size());
    for (const auto& tri : in_triangles) {
        for (std::int32_t idx : tri) {
            if (idx < 0 || idx >= vertex_count)
                throw FormatError("triangle references vertex " + std::to_string(idx) +
                                  " out of range [0, " + std::to_string(vertex_count) + ")");
        }
        std::array<std::int32_t, 3> t{remap[tri[0]], remap[tri[1]], remap[tri[2]]};
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) continue;
        mesh.triangles.push_back(t);
        if (mesh.triangle_area(mesh.triangles.size() - 1) < area_min) mesh.triangles.pop_back();
    }
    mesh.analyze_topology();
    return mesh;
}

}  // namespace sqgrasp
