#include "sqgrasp/geometry/primitives.hpp"

#include <cmath>
#include <numbers>

namespace sqgrasp {

namespace {
constexpr double kPi = std::numbers::pi;
}

TriangleMesh make_box(const Eigen::Vector3d& center, const Eigen::Vector3d& half) {
    std::vector<Eigen::Vector3d> verts;
    verts.reserve(8);
    for (int corner = 0; corner < 8; ++corner) {
        verts.emplace_back(center.x() + ((corner & 1) ? half.x() : -half.x()),
                           center.y() + ((corner & 2) ? half.y() : -half.y()),
                           center.z() + ((corner & 4) ? half.z() : -half.z()));
    }
    // 12 outward-wound triangles, two per face
    const std::array<std::int32_t, 3> faces[12] = {
        {0, 2, 1}, {1, 2, 3},  // z-
        {4, 5, 6}, {5, 7, 6},  // z+
        {0, 1, 4}, {1, 5, 4},  // y-
        {2, 6, 3}, {3, 6, 7},  // y+
        {0, 4, 2}, {2, 4, 6},  // x-
        {1, 3, 5}, {3, 7, 5},  // x+
    };
    return TriangleMesh::cleaned(std::move(verts), {faces, faces + 12});
}

TriangleMesh make_uv_sphere(const Eigen::Vector3d& center, double radius, int slices,
                            int stacks) {
    std::vector<Eigen::Vector3d> verts;
    std::vector<std::array<std::int32_t, 3>> tris;
    // rings exclude the poles
    for (int s = 1; s < stacks; ++s) {
        const double phi = kPi * s / stacks;  // 0 = north pole
        for (int l = 0; l < slices; ++l) {
            const double theta = 2.0 * kPi * l / slices;
            verts.emplace_back(center.x() + radius * std::sin(phi) * std::cos(theta),
                               center.y() + radius * std::sin(phi) * std::sin(theta),
                               center.z() + radius * std::cos(phi));
        }
    }
    const auto north = static_cast<std::int32_t>(verts.size());
    verts.emplace_back(center.x(), center.y(), center.z() + radius);
    const auto south = static_cast<std::int32_t>(verts.size());
    verts.emplace_back(center.x(), center.y(), center.z() - radius);

    auto ring = [slices](int s, int l) {
        return static_cast<std::int32_t>((s - 1) * slices + (l % slices));
    };
    for (int l = 0; l < slices; ++l) {
        tris.push_back({north, ring(1, l), ring(1, l + 1)});
        tris.push_back({south, ring(stacks - 1, l + 1), ring(stacks - 1, l)});
    }
    for (int s = 1; s + 1 < stacks; ++s) {
        for (int l = 0; l < slices; ++l) {
            tris.push_back({ring(s, l), ring(s + 1, l), ring(s + 1, l + 1)});
            tris.push_back({ring(s, l), ring(s + 1, l + 1), ring(s, l + 1)});
        }
    }
    return TriangleMesh::cleaned(std::move(verts), std::move(tris));
}

TriangleMesh make_cylinder(const Eigen::Vector3d& center, const Eigen::Vector3d& axis,
                           double radius, double half_length, int slices) {
    const Eigen::Vector3d w = axis.normalized();
    Eigen::Vector3d u = w.cross(Eigen::Vector3d::UnitZ());
    if (u.norm() < 1e-6) u = w.cross(Eigen::Vector3d::UnitX());
    u.normalize();
    const Eigen::Vector3d v = w.cross(u);

    std::vector<Eigen::Vector3d> verts;
    std::vector<std::array<std::int32_t, 3>> tris;
    for (int side = 0; side < 2; ++side) {
        const double h = side == 0 ? -half_length : half_length;
        for (int l = 0; l < slices; ++l) {
            const double theta = 2.0 * kPi * l / slices;
            verts.push_back(center + h * w + radius * (std::cos(theta) * u + std::sin(theta) * v));
        }
    }
    const auto cap_bottom = static_cast<std::int32_t>(verts.size());
    verts.push_back(center - half_length * w);
    const auto cap_top = static_cast<std::int32_t>(verts.size());
    verts.push_back(center + half_length * w);

    auto lower = [slices](int l) { return static_cast<std::int32_t>(l % slices); };
    auto upper = [slices](int l) { return static_cast<std::int32_t>(slices + (l % slices)); };
    for (int l = 0; l < slices; ++l) {
        tris.push_back({lower(l), lower(l + 1), upper(l)});
        tris.push_back({lower(l + 1), upper(l + 1), upper(l)});
        tris.push_back({cap_bottom, lower(l + 1), lower(l)});
        tris.push_back({cap_top, upper(l), upper(l + 1)});
    }
    return TriangleMesh::cleaned(std::move(verts), std::move(tris));
}

TriangleMesh merge_meshes(const std::vector<TriangleMesh>& parts) {
    std::vector<Eigen::Vector3d> verts;
    std::vector<std::array<std::int32_t, 3>> tris;
    for (const TriangleMesh& part : parts) {
        const auto base = static_cast<std::int32_t>(verts.size());
        verts.insert(verts.end(), part.vertices.begin(), part.vertices.end());
        for (const auto& t : part.triangles)
            tris.push_back({t[0] + base, t[1] + base, t[2] + base});
    }
    return TriangleMesh::cleaned(std::move(verts), std::move(tris));
}

TriangleMesh make_unit_cube() {
    return make_box(Eigen::Vector3d::Zero(), Eigen::Vector3d::Constant(0.5));
}

TriangleMesh make_twin_spheres(double radius, double half_gap) {
    return merge_meshes({make_uv_sphere({-half_gap, 0, 0}, radius),
                         make_uv_sphere({half_gap, 0, 0}, radius)});
}

TriangleMesh make_dumbbell(double radius, double half_gap, double bridge_radius) {
    // bridge ends 0.04 inside each sphere so the union stays connected
    const double embed = 0.04;
    const double bridge_half = half_gap - radius + embed;
    return merge_meshes({make_uv_sphere({-half_gap, 0, 0}, radius),
                         make_uv_sphere({half_gap, 0, 0}, radius),
                         make_cylinder(Eigen::Vector3d::Zero(), Eigen::Vector3d::UnitX(),
                                       bridge_radius, bridge_half)});
}

TriangleMesh make_chair_like() {
    const double seat_h = 0.40;
    const double seat_half = 0.20;
    const double slab = 0.02;   // half thickness of seat/back
    const double leg_half = 0.02;
    std::vector<TriangleMesh> parts;
    // seat
    parts.push_back(make_box({0, 0, seat_h}, {seat_half, seat_half, slab}));
    // four legs, overlapping the seat underside slightly
    for (int sx = -1; sx <= 1; sx += 2)
        for (int sy = -1; sy <= 1; sy += 2) {
            const double x = sx * (seat_half - leg_half);
            const double y = sy * (seat_half - leg_half);
            parts.push_back(make_box({x, y, (seat_h - slab + 0.01) / 2},
                                     {leg_half, leg_half, (seat_h - slab + 0.01) / 2}));
        }
    // back rest rising from the seat rear edge
    parts.push_back(make_box({0, seat_half - slab, seat_h + 0.21}, {seat_half, slab, 0.22}));
    return merge_meshes(parts);
}

}  // namespace sqgrasp
