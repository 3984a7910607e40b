#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sqgrasp/geometry/mesh.hpp"

namespace sqgrasp {

struct SurfaceSample {
    Eigen::Vector3d point;
    Eigen::Vector3d normal;  // outward normal of the containing triangle
};

/// n area-weighted surface points, deterministic per seed.
std::vector<SurfaceSample> sample_surface(const TriangleMesh& mesh, std::size_t n,
                                          std::uint64_t seed);

}  // namespace sqgrasp
