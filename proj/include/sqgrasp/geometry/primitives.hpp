#pragma once

#include "sqgrasp/geometry/mesh.hpp"

namespace sqgrasp {

// Procedural test meshes. All are generated with outward-facing windings.

TriangleMesh make_box(const Eigen::Vector3d& center, const Eigen::Vector3d& half_extents);

TriangleMesh make_uv_sphere(const Eigen::Vector3d& center, double radius, int slices = 48,
                            int stacks = 24);

/// Closed cylinder along `axis` (unit vector) with the given half length.
TriangleMesh make_cylinder(const Eigen::Vector3d& center, const Eigen::Vector3d& axis,
                           double radius, double half_length, int slices = 32);

/// Concatenates parts into one soup and re-welds shared vertices. Overlapping
/// closed parts stay a valid winding-number solid even though internal walls
/// remain.
TriangleMesh merge_meshes(const std::vector<TriangleMesh>& parts);

/// Axis-aligned unit cube centered at the origin (8 vertices, 12 triangles).
TriangleMesh make_unit_cube();

/// Two disjoint spheres of the given radius, centers at +/- half_gap on x.
TriangleMesh make_twin_spheres(double radius = 0.3, double half_gap = 0.5);

/// Twin spheres connected by a thin cylinder bridge along x.
TriangleMesh make_dumbbell(double radius = 0.3, double half_gap = 0.5,
                           double bridge_radius = 0.06);

/// Seat + back + four legs, all boxes, slightly overlapped so the union is
/// connected.
TriangleMesh make_chair_like();

}  // namespace sqgrasp
