#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Batch arithmetic kernels behind the geometry and superquadric hot loops.
// Every operation ships as a scalar reference implementation plus an AVX2
// variant that mirrors the scalar code operation-for-operation (no FMA
// contraction), so both produce bit-identical results and runtime dispatch
// never changes numerics. Selection: cpuid at startup, overridable via the
// SUPERQ_SIMD environment variable (auto | scalar | avx2) or force_level().

namespace sqgrasp::kernels {

enum class SimdLevel { scalar = 0, avx2 = 1 };

const char* level_name(SimdLevel level);
SimdLevel detected_level();
SimdLevel active_level();
void force_level(SimdLevel level);

// Superquadric evaluation constants in canonical form. rot/trans map world
// points into the canonical frame: c = rot * (p - trans).
struct SqEval {
    double inv_a[3];
    double p_xy;     // 2 / eps2
    double p_ratio;  // eps2 / eps1
    double p_z;      // 2 / eps1
    double p_rad;    // -eps1 / 2
    double min_axis;
    double rot[9];  // row-major
    double trans[3];
};

// Implicit inside-outside function: 1 on the surface, <1 inside.
void sq_implicit(const SqEval& sq, const double* px, const double* py, const double* pz,
                 std::size_t n, double* out);

// Radial signed-distance approximation |c| * (1 - F^(-eps1/2)).
void sq_radial_distance(const SqEval& sq, const double* px, const double* py, const double* pz,
                        std::size_t n, double* out);

// Triangle soup in structure-of-arrays layout (one array per coordinate).
struct TriangleSoa {
    std::vector<double> ax, ay, az, bx, by, bz, cx, cy, cz;

    std::size_t size() const { return ax.size(); }

    void reserve(std::size_t n);
    void push_back(const double a[3], const double b[3], const double c[3]);
};

// Minimum squared point-to-triangle distance over tris[begin, end).
double min_dist_sq(const TriangleSoa& tris, std::size_t begin, std::size_t end,
                   const double p[3]);

// Surface contact points with outward unit normals, SoA layout.
struct ContactSoa {
    std::vector<double> px, py, pz, nx, ny, nz;

    std::size_t size() const { return px.size(); }

    void reserve(std::size_t n);
    void push_back(const double p[3], const double normal[3]);
};

struct AntipodalCounts {
    std::int64_t positive = 0;
    std::int64_t negative = 0;
};

// Counts contacts inside the gripper-frame box [box_lo, box_hi] whose normals
// align with (dot >= cos_theta) or oppose (dot <= -cos_theta) f_world.
// rot_wg/origin map world points into the gripper frame: g = rot_wg * (p - origin).
AntipodalCounts antipodal_counts(const ContactSoa& contacts, const double rot_wg[9],
                                 const double origin[3], const double box_lo[3],
                                 const double box_hi[3], const double f_world[3],
                                 double cos_theta);

// Shared positive-base power primitive: exp2(p * log2(t)) with fixed
// polynomial evaluation. Identical algorithm in both lanes.
double pos_pow(double base, double exponent);

// sign(u) * |u|^p; the standard sign-safe superquadric power convention.
double sign_pow(double u, double p);

namespace scalar {
void sq_implicit(const SqEval& sq, const double* px, const double* py, const double* pz,
                 std::size_t n, double* out);
void sq_radial_distance(const SqEval& sq, const double* px, const double* py, const double* pz,
                        std::size_t n, double* out);
double min_dist_sq(const TriangleSoa& tris, std::size_t begin, std::size_t end,
                   const double p[3]);
AntipodalCounts antipodal_counts(const ContactSoa& contacts, const double rot_wg[9],
                                 const double origin[3], const double box_lo[3],
                                 const double box_hi[3], const double f_world[3],
                                 double cos_theta);
double pos_pow(double base, double exponent);
}  // namespace scalar

#if defined(SQGRASP_HAVE_AVX2)
namespace avx2 {
bool supported();
void sq_implicit(const SqEval& sq, const double* px, const double* py, const double* pz,
                 std::size_t n, double* out);
void sq_radial_distance(const SqEval& sq, const double* px, const double* py, const double* pz,
                        std::size_t n, double* out);
double min_dist_sq(const TriangleSoa& tris, std::size_t begin, std::size_t end,
                   const double p[3]);
AntipodalCounts antipodal_counts(const ContactSoa& contacts, const double rot_wg[9],
                                 const double origin[3], const double box_lo[3],
                                 const double box_hi[3], const double f_world[3],
                                 double cos_theta);
void pos_pow_batch(const double* base, const double* exponent, std::size_t n, double* out);
}  // namespace avx2
#endif

}  // namespace sqgrasp::kernels
