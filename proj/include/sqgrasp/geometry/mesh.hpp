#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

namespace sqgrasp {

struct Pose {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    static Pose identity() { return {}; }

    Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation * p + translation; }
    Eigen::Vector3d rotate(const Eigen::Vector3d& v) const { return rotation * v; }

    Pose inverse() const {
        Pose inv;
        inv.rotation = rotation.transpose();
        inv.translation = -(inv.rotation * translation);
        return inv;
    }

    /// this ∘ other: apply other first, then this.
    Pose compose(const Pose& other) const {
        Pose out;
        out.rotation = rotation * other.rotation;
        out.translation = rotation * other.translation + translation;
        return out;
    }

    bool rotation_is_valid(double tol = 1e-9) const {
        const Eigen::Matrix3d err = rotation * rotation.transpose() - Eigen::Matrix3d::Identity();
        return err.cwiseAbs().maxCoeff() <= tol && std::abs(rotation.determinant() - 1.0) <= tol;
    }
};

struct Aabb {
    Eigen::Vector3d min = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector3d max = Eigen::Vector3d::Constant(-std::numeric_limits<double>::infinity());

    void expand(const Eigen::Vector3d& p) {
        min = min.cwiseMin(p);
        max = max.cwiseMax(p);
    }
    void expand(const Aabb& other) {
        min = min.cwiseMin(other.min);
        max = max.cwiseMax(other.max);
    }
    bool empty() const { return (max.array() < min.array()).any(); }
    Eigen::Vector3d center() const { return 0.5 * (min + max); }
    Eigen::Vector3d extent() const { return max - min; }
    double diagonal() const { return empty() ? 0.0 : extent().norm(); }
    bool contains(const Eigen::Vector3d& p) const {
        return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
    }
    double distance_sq(const Eigen::Vector3d& p) const {
        const Eigen::Vector3d d =
            (min - p).cwiseMax(0.0).cwiseMax(p - max);
        return d.squaredNorm();
    }
};

struct TriangleMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<std::int32_t, 3>> triangles;
    std::vector<Eigen::Vector3d> vertex_normals;  // empty or one per vertex

    bool watertight = false;
    std::size_t boundary_edge_count = 0;

    bool empty() const { return triangles.empty(); }

    Eigen::Vector3d triangle_vertex(std::size_t tri, int corner) const {
        return vertices[triangles[tri][corner]];
    }

    /// Non-unit normal (cross product); length = 2 * area.
    Eigen::Vector3d triangle_cross(std::size_t tri) const {
        const Eigen::Vector3d a = triangle_vertex(tri, 0);
        return (triangle_vertex(tri, 1) - a).cross(triangle_vertex(tri, 2) - a);
    }

    double triangle_area(std::size_t tri) const { return 0.5 * triangle_cross(tri).norm(); }

    Eigen::Vector3d triangle_normal(std::size_t tri) const {
        return triangle_cross(tri).normalized();
    }

    Aabb bounds() const {
        Aabb box;
        for (const auto& v : vertices) box.expand(v);
        return box;
    }

    double total_area() const {
        double area = 0;
        for (std::size_t t = 0; t < triangles.size(); ++t) area += triangle_area(t);
        return area;
    }

    /// Area-weighted normals averaged over incident triangles.
    void compute_vertex_normals();

    /// Counts boundary edges and sets the watertight flag (every edge shared
    /// by exactly two triangles).
    void analyze_topology();

    /// Merges duplicate vertices (within merge_tol) and drops triangles with
    /// area below area_min, then refreshes topology.
    static TriangleMesh cleaned(std::vector<Eigen::Vector3d> vertices,
                                std::vector<std::array<std::int32_t, 3>> triangles,
                                double merge_tol = 1e-9, double area_min = 1e-12);
};

}  // namespace sqgrasp
