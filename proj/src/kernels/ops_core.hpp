#pragma once

#include <cstddef>
#include <limits>

#include "sqgrasp/kernels/kernels.hpp"
#include "pow_core.hpp"

// Per-element reference implementations. The operation order here is the
// contract the AVX2 lane mirrors; do not reassociate or fuse.

namespace sqgrasp::kernels::detail {

inline constexpr double kCenterRadiusSq = 1e-30;

struct CanonicalPoint {
    double x, y, z;
};

inline CanonicalPoint to_canonical(const SqEval& sq, double px, double py, double pz) {
    const double dx = px - sq.trans[0];
    const double dy = py - sq.trans[1];
    const double dz = pz - sq.trans[2];
    CanonicalPoint c;
    c.x = (sq.rot[0] * dx + sq.rot[1] * dy) + sq.rot[2] * dz;
    c.y = (sq.rot[3] * dx + sq.rot[4] * dy) + sq.rot[5] * dz;
    c.z = (sq.rot[6] * dx + sq.rot[7] * dy) + sq.rot[8] * dz;
    return c;
}

inline double implicit_from_canonical(const SqEval& sq, const CanonicalPoint& c) {
    const double ux = (c.x < 0.0 ? -c.x : c.x) * sq.inv_a[0];
    const double uy = (c.y < 0.0 ? -c.y : c.y) * sq.inv_a[1];
    const double uz = (c.z < 0.0 ? -c.z : c.z) * sq.inv_a[2];
    const double g = pos_pow(ux, sq.p_xy) + pos_pow(uy, sq.p_xy);
    return pos_pow(g, sq.p_ratio) + pos_pow(uz, sq.p_z);
}

inline double sq_implicit_one(const SqEval& sq, double px, double py, double pz) {
    return implicit_from_canonical(sq, to_canonical(sq, px, py, pz));
}

inline double sq_radial_one(const SqEval& sq, double px, double py, double pz) {
    const CanonicalPoint c = to_canonical(sq, px, py, pz);
    const double r2 = (c.x * c.x + c.y * c.y) + c.z * c.z;
    if (r2 < kCenterRadiusSq) return -sq.min_axis;
    const double f = implicit_from_canonical(sq, c);
    const double shrink = pos_pow(f, sq.p_rad);
    return std::sqrt(r2) * (1.0 - shrink);
}

inline double clamp01(double t) { return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t); }

// Squared distance from p to triangle (a, b, c): minimum over the three
// clamped edge projections and, when the plane projection lands inside, the
// plane distance. Branch-free candidates; complete for all Voronoi regions.
inline double tri_dist_sq_one(double px, double py, double pz, double ax, double ay, double az,
                              double bx, double by, double bz, double cx, double cy, double cz) {
    const double abx = bx - ax, aby = by - ay, abz = bz - az;
    const double acx = cx - ax, acy = cy - ay, acz = cz - az;
    const double bcx = cx - bx, bcy = cy - by, bcz = cz - bz;
    const double apx = px - ax, apy = py - ay, apz = pz - az;
    const double bpx = px - bx, bpy = py - by, bpz = pz - bz;
    const double cpx = px - cx, cpy = py - cy, cpz = pz - cz;

    const double ab_ab = (abx * abx + aby * aby) + abz * abz;
    const double ac_ac = (acx * acx + acy * acy) + acz * acz;
    const double bc_bc = (bcx * bcx + bcy * bcy) + bcz * bcz;

    const double d1 = (abx * apx + aby * apy) + abz * apz;  // ab . ap
    const double d2 = (acx * apx + acy * apy) + acz * apz;  // ac . ap
    const double d3 = (abx * bpx + aby * bpy) + abz * bpz;  // ab . bp
    const double d4 = (acx * bpx + acy * bpy) + acz * bpz;  // ac . bp
    const double d5 = (abx * cpx + aby * cpy) + abz * cpz;  // ab . cp
    const double d6 = (acx * cpx + acy * cpy) + acz * cpz;  // ac . cp
    const double d7 = (bcx * bpx + bcy * bpy) + bcz * bpz;  // bc . bp

    const double t_ab = clamp01(d1 / ab_ab);
    const double t_ac = clamp01(d2 / ac_ac);
    const double t_bc = clamp01(d7 / bc_bc);

    double ex = apx - t_ab * abx, ey = apy - t_ab * aby, ez = apz - t_ab * abz;
    const double dist_ab = (ex * ex + ey * ey) + ez * ez;
    ex = apx - t_ac * acx, ey = apy - t_ac * acy, ez = apz - t_ac * acz;
    const double dist_ac = (ex * ex + ey * ey) + ez * ez;
    ex = bpx - t_bc * bcx, ey = bpy - t_bc * bcy, ez = bpz - t_bc * bcz;
    const double dist_bc = (ex * ex + ey * ey) + ez * ez;

    const double nx = aby * acz - abz * acy;
    const double ny = abz * acx - abx * acz;
    const double nz = abx * acy - aby * acx;
    const double nn = (nx * nx + ny * ny) + nz * nz;
    const double dplane = (apx * nx + apy * ny) + apz * nz;

    const double va = d3 * d6 - d5 * d4;
    const double vb = d5 * d2 - d1 * d6;
    const double vc = d1 * d4 - d3 * d2;
    const bool inside = (va >= 0.0) && (vb >= 0.0) && (vc >= 0.0) && (nn > 0.0);
    const double dist_face =
        inside ? (dplane * dplane) / nn : std::numeric_limits<double>::infinity();

    const double e_min = dist_ab < dist_ac ? dist_ab : dist_ac;
    const double f_min = dist_bc < dist_face ? dist_bc : dist_face;
    return e_min < f_min ? e_min : f_min;
}

struct ContactClass {
    bool positive;
    bool negative;
};

inline ContactClass classify_contact_one(double px, double py, double pz, double nx, double ny,
                                         double nz, const double rot_wg[9], const double origin[3],
                                         const double box_lo[3], const double box_hi[3],
                                         const double f_world[3], double cos_theta) {
    const double dx = px - origin[0];
    const double dy = py - origin[1];
    const double dz = pz - origin[2];
    const double gx = (rot_wg[0] * dx + rot_wg[1] * dy) + rot_wg[2] * dz;
    const double gy = (rot_wg[3] * dx + rot_wg[4] * dy) + rot_wg[5] * dz;
    const double gz = (rot_wg[6] * dx + rot_wg[7] * dy) + rot_wg[8] * dz;
    const bool in_box = gx >= box_lo[0] && gx <= box_hi[0] && gy >= box_lo[1] &&
                        gy <= box_hi[1] && gz >= box_lo[2] && gz <= box_hi[2];
    const double d = (nx * f_world[0] + ny * f_world[1]) + nz * f_world[2];
    return ContactClass{in_box && d >= cos_theta, in_box && d <= -cos_theta};
}

}  // namespace sqgrasp::kernels::detail
