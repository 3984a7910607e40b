#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sqgrasp/geometry/bvh.hpp"
#include "sqgrasp/geometry/mesh.hpp"

namespace sqgrasp {

// Truncated signed distance field on a regular voxel lattice. `origin` is the
// center of voxel (0,0,0); values are stored x-fastest and clamped to
// [-truncation, +truncation].
struct SdfGrid {
    Eigen::Vector3d origin = Eigen::Vector3d::Zero();
    double spacing = 0;
    std::array<std::int32_t, 3> dims{0, 0, 0};
    double truncation = 0;
    std::vector<double> values;

    std::size_t cell_count() const {
        return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    }

    std::size_t index(std::int32_t i, std::int32_t j, std::int32_t k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(dims[0]) *
                   (static_cast<std::size_t>(j) + static_cast<std::size_t>(dims[1]) * k);
    }

    Eigen::Vector3d center(std::int32_t i, std::int32_t j, std::int32_t k) const {
        return origin + spacing * Eigen::Vector3d(i, j, k);
    }

    Eigen::Vector3d center(std::size_t flat) const {
        const auto nx = static_cast<std::size_t>(dims[0]);
        const auto ny = static_cast<std::size_t>(dims[1]);
        return center(static_cast<std::int32_t>(flat % nx),
                      static_cast<std::int32_t>((flat / nx) % ny),
                      static_cast<std::int32_t>(flat / (nx * ny)));
    }

    /// Domain on which trilinear interpolation is defined.
    Aabb domain() const {
        Aabb box;
        box.expand(origin);
        box.expand(origin + spacing * Eigen::Vector3d(dims[0] - 1, dims[1] - 1, dims[2] - 1));
        return box;
    }
};

/// Voxelizes the mesh: spacing = longest bbox side / target_resolution,
/// truncation = truncation_factor * spacing, every voxel's value computed
/// exactly from the mesh BVH and clamped. Grid bounds enclose the mesh
/// bounding box with a 3-voxel margin. target_resolution must lie in
/// [16, 512].
SdfGrid build_sdf(const TriangleMesh& mesh, int target_resolution, double truncation_factor,
                  unsigned threads = 0);

/// Trilinear interpolation of the 8 surrounding voxels. Outside the domain
/// throws OutOfDomainError carrying the value at the clamped boundary point.
double query_trilinear(const SdfGrid& grid, const Eigen::Vector3d& p);

// Binary dump: magic "SQSDF1", dims (3 x int32), origin (3 x f64), spacing
// (f64), truncation (f64), then values as f32 x-fastest; all little-endian.
void save_sdf(const SdfGrid& grid, std::ostream& out);
SdfGrid load_sdf(std::istream& in);
void save_sdf_file(const SdfGrid& grid, const std::string& path);
SdfGrid load_sdf_file(const std::string& path);

}  // namespace sqgrasp
