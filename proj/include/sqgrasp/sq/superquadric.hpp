#pragma once

#include <span>
#include <string>
#include <vector>

#include "sqgrasp/geometry/mesh.hpp"
#include "sqgrasp/kernels/kernels.hpp"

namespace sqgrasp {

// Superquadric primitive: semi-axes (a_x, a_y, a_z), shape exponents
// (eps1, eps2) and a canonical-to-world rigid pose. All powers use the
// sign-safe |u|^p * sign(u) convention.
struct Superquadric {
    Eigen::Vector3d axes = Eigen::Vector3d::Ones();
    double eps1 = 1.0;
    double eps2 = 1.0;
    Pose pose;

    double min_axis() const { return axes.minCoeff(); }

    kernels::SqEval eval_constants() const;

    /// Inside-outside function of a world-frame point: 1 on the surface,
    /// < 1 inside, > 1 outside.
    double implicit_value(const Eigen::Vector3d& world_point) const;

    /// Spherical-product surface point for eta in [-pi/2, pi/2],
    /// omega in [-pi, pi], mapped to the world frame.
    Eigen::Vector3d surface_point(double eta, double omega) const;

    /// Radial signed-distance approximation in meters: |c| * (1 - F^(-eps1/2))
    /// for the canonical point c; exactly -min_axis at the center.
    double signed_distance(const Eigen::Vector3d& world_point) const;

    /// Batched signed distance over SoA world points.
    void signed_distance_batch(std::span<const double> xs, std::span<const double> ys,
                               std::span<const double> zs, std::span<double> out) const;
};

// JSON serialization of SQ sets: array of records
// {a: [ax, ay, az], eps: [e1, e2], rotation: 9 row-major, translation: [3]}.
std::string superquadrics_to_json(const std::vector<Superquadric>& sqs);
std::vector<Superquadric> superquadrics_from_json(const std::string& text);

}  // namespace sqgrasp
