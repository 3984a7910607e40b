#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "sqgrasp/geometry/mesh.hpp"
#include "sqgrasp/kernels/kernels.hpp"

namespace sqgrasp {

// Bounding-volume hierarchy over a triangle soup. Immutable after
// construction; all queries are const and thread-safe.
//
// Inside/outside classification uses the generalized winding number with a
// dipole far-field approximation per node, so non-watertight meshes still get
// usable signs.
class MeshBvh {
public:
    explicit MeshBvh(const TriangleMesh& mesh);

    /// Exact unsigned distance to the closest triangle. When nothing lies
    /// closer than `cap`, returns `cap`.
    double distance(const Eigen::Vector3d& p,
                    double cap = std::numeric_limits<double>::infinity()) const;

    double winding_number(const Eigen::Vector3d& p) const;

    bool inside(const Eigen::Vector3d& p) const { return winding_number(p) >= 0.5; }

    /// distance * (-1 if inside else +1), capped in magnitude by `cap`.
    double signed_distance(const Eigen::Vector3d& p,
                           double cap = std::numeric_limits<double>::infinity()) const;

    std::size_t triangle_count() const { return tris_.size(); }
    const kernels::TriangleSoa& leaf_triangles() const { return tris_; }

private:
    struct Node {
        Aabb box;
        std::int32_t left = -1;   // internal: child indices
        std::int32_t right = -1;
        std::uint32_t begin = 0;  // leaf: range into tris_
        std::uint32_t count = 0;
        // far-field winding data
        Eigen::Vector3d dipole_center = Eigen::Vector3d::Zero();
        Eigen::Vector3d dipole_normal = Eigen::Vector3d::Zero();  // sum of area-weighted normals
        double dipole_radius_sq = 0;

        bool is_leaf() const { return count > 0; }
    };

    std::int32_t build(std::vector<std::uint32_t>& order, std::uint32_t begin, std::uint32_t end,
                       const std::vector<Eigen::Vector3d>& centroids,
                       const std::vector<Aabb>& boxes);
    void fill_winding_data(std::int32_t node_index);
    double winding_recurse(std::int32_t node_index, const Eigen::Vector3d& p) const;

    std::vector<Node> nodes_;
    kernels::TriangleSoa tris_;  // leaf-ordered
};

}  // namespace sqgrasp
