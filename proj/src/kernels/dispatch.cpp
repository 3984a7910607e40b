#include <atomic>
#include <cstdlib>
#include <cstring>

#include "sqgrasp/kernels/kernels.hpp"
#include "sqgrasp/common/log.hpp"

namespace sqgrasp::kernels {

namespace {

struct Ops {
    void (*sq_implicit)(const SqEval&, const double*, const double*, const double*, std::size_t,
                        double*);
    void (*sq_radial)(const SqEval&, const double*, const double*, const double*, std::size_t,
                      double*);
    double (*min_dist_sq)(const TriangleSoa&, std::size_t, std::size_t, const double*);
    AntipodalCounts (*antipodal)(const ContactSoa&, const double*, const double*, const double*,
                                 const double*, const double*, double);
};

constexpr Ops kScalarOps{scalar::sq_implicit, scalar::sq_radial_distance, scalar::min_dist_sq,
                         scalar::antipodal_counts};

#if defined(SQGRASP_HAVE_AVX2)
constexpr Ops kAvx2Ops{avx2::sq_implicit, avx2::sq_radial_distance, avx2::min_dist_sq,
                       avx2::antipodal_counts};
#endif

SimdLevel pick_initial_level() {
    SimdLevel level = detected_level();
    if (const char* env = std::getenv("SUPERQ_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) {
            level = SimdLevel::scalar;
        } else if (std::strcmp(env, "avx2") == 0) {
            if (detected_level() == SimdLevel::avx2) {
                level = SimdLevel::avx2;
            } else {
                log_error("SUPERQ_SIMD=avx2 requested but CPU lacks AVX2; using scalar");
                level = SimdLevel::scalar;
            }
        } else if (std::strcmp(env, "auto") != 0) {
            log_error("unknown SUPERQ_SIMD value '%s' (want auto|scalar|avx2)", env);
        }
    }
    log_debug("simd level: %s", level_name(level));
    return level;
}

std::atomic<int>& level_slot() {
    static std::atomic<int> slot{static_cast<int>(pick_initial_level())};
    return slot;
}

const Ops& ops_for(SimdLevel level) {
#if defined(SQGRASP_HAVE_AVX2)
    if (level == SimdLevel::avx2) return kAvx2Ops;
#else
    (void)level;
#endif
    return kScalarOps;
}

const Ops& active_ops() { return ops_for(active_level()); }

}  // namespace

#if defined(SQGRASP_HAVE_AVX2)
namespace avx2 {
bool supported() { return __builtin_cpu_supports("avx2") != 0; }
}  // namespace avx2
#endif

const char* level_name(SimdLevel level) {
    switch (level) {
        case SimdLevel::scalar: return "scalar";
        case SimdLevel::avx2: return "avx2";
    }
    return "?";
}

SimdLevel detected_level() {
#if defined(SQGRASP_HAVE_AVX2)
    if (avx2::supported()) return SimdLevel::avx2;
#endif
    return SimdLevel::scalar;
}

SimdLevel active_level() { return static_cast<SimdLevel>(level_slot().load(std::memory_order_relaxed)); }

void force_level(SimdLevel level) {
    if (level == SimdLevel::avx2 && detected_level() != SimdLevel::avx2) level = SimdLevel::scalar;
    level_slot().store(static_cast<int>(level), std::memory_order_relaxed);
}

void sq_implicit(const SqEval& sq, const double* px, const double* py, const double* pz,
                 std::size_t n, double* out) {
    active_ops().sq_implicit(sq, px, py, pz, n, out);
}

void sq_radial_distance(const SqEval& sq, const double* px, const double* py, const double* pz,
                        std::size_t n, double* out) {
    active_ops().sq_radial(sq, px, py, pz, n, out);
}

double min_dist_sq(const TriangleSoa& tris, std::size_t begin, std::size_t end,
                   const double p[3]) {
    return active_ops().min_dist_sq(tris, begin, end, p);
}

AntipodalCounts antipodal_counts(const ContactSoa& contacts, const double rot_wg[9],
                                 const double origin[3], const double box_lo[3],
                                 const double box_hi[3], const double f_world[3],
                                 double cos_theta) {
    return active_ops().antipodal(contacts, rot_wg, origin, box_lo, box_hi, f_world, cos_theta);
}

}  // namespace sqgrasp::kernels
