// AVX2 lane. Every sequence mirrors the scalar code in ops_core.hpp /
// pow_core.hpp operation-for-operation; the build disables FP contraction for
// both translation units, so results are bit-identical with the scalar lane.

#include <immintrin.h>

#include <cstdint>
#include <limits>

#include "sqgrasp/kernels/kernels.hpp"
#include "ops_core.hpp"

namespace sqgrasp::kernels::avx2 {

namespace {

const __m256d kOne = _mm256_set1_pd(1.0);
const __m256d kHalf = _mm256_set1_pd(0.5);
const __m256d kZero = _mm256_setzero_pd();
const __m256d kInf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

// scalar `a < b ? a : b` has MINPD semantics exactly
inline __m256d vmin(__m256d a, __m256d b) { return _mm256_min_pd(a, b); }

inline __m256d vclamp01(__m256d t) {
    // mirrors: t < 0 ? 0 : (t > 1 ? 1 : t), including NaN passthrough
    const __m256d hi = _mm256_blendv_pd(t, kOne, _mm256_cmp_pd(t, kOne, _CMP_GT_OQ));
    return _mm256_blendv_pd(hi, kZero, _mm256_cmp_pd(t, kZero, _CMP_LT_OQ));
}

inline __m256d small_int_to_double(__m256i v) {
    // v holds non-negative 64-bit values < 2^52
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
    return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(v, magic)),
                         _mm256_set1_pd(detail::kExp2Magic));
}

inline __m256d vlog2_pos(__m256d t) {
    const __m256i bits = _mm256_castpd_si256(t);
    __m256d e = small_int_to_double(_mm256_srli_epi64(bits, 52));
    e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));
    const __m256i mant = _mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
        _mm256_set1_epi64x(0x3ff0000000000000LL));
    __m256d m = _mm256_castsi256_pd(mant);
    const __m256d gt = _mm256_cmp_pd(m, _mm256_set1_pd(detail::kSqrt2), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, kHalf), gt);
    e = _mm256_add_pd(e, _mm256_and_pd(gt, kOne));
    const __m256d z =
        _mm256_div_pd(_mm256_sub_pd(m, kOne), _mm256_add_pd(m, kOne));
    const __m256d z2 = _mm256_mul_pd(z, z);
    __m256d s = _mm256_set1_pd(detail::kLogCoeff[10]);
    for (int k = 9; k >= 0; --k)
        s = _mm256_add_pd(_mm256_mul_pd(s, z2), _mm256_set1_pd(detail::kLogCoeff[k]));
    return _mm256_add_pd(e, _mm256_mul_pd(z, s));
}

inline __m256d vexp2_inner(__m256d y) {
    const __m256d n = _mm256_round_pd(y, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d f = _mm256_sub_pd(y, n);
    const __m256d q = _mm256_mul_pd(f, _mm256_set1_pd(detail::kLn2));
    __m256d s = _mm256_set1_pd(detail::kExpCoeff[13]);
    for (int k = 12; k >= 0; --k)
        s = _mm256_add_pd(_mm256_mul_pd(s, q), _mm256_set1_pd(detail::kExpCoeff[k]));
    const __m256i ni = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
    const __m256i scale_bits =
        _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(s, _mm256_castsi256_pd(scale_bits));
}

inline __m256d vpos_pow(__m256d t, __m256d p) {
    const __m256d tiny = _mm256_cmp_pd(t, _mm256_set1_pd(detail::kTinyBase), _CMP_LT_OQ);
    const __m256d t_safe = _mm256_blendv_pd(t, kOne, tiny);
    const __m256d y = _mm256_mul_pd(p, vlog2_pos(t_safe));
    const __m256d lo = _mm256_cmp_pd(y, _mm256_set1_pd(-detail::kOverflowY), _CMP_LE_OQ);
    const __m256d hi = _mm256_cmp_pd(y, _mm256_set1_pd(detail::kOverflowY), _CMP_GE_OQ);
    const __m256d y_safe =
        _mm256_blendv_pd(_mm256_blendv_pd(y, kZero, lo), kZero, hi);
    __m256d r = vexp2_inner(y_safe);
    r = _mm256_blendv_pd(r, kZero, lo);
    r = _mm256_blendv_pd(r, kInf, hi);
    __m256d tiny_val =
        _mm256_blendv_pd(kInf, kZero, _mm256_cmp_pd(p, kZero, _CMP_GT_OQ));
    tiny_val = _mm256_blendv_pd(tiny_val, kOne, _mm256_cmp_pd(p, kZero, _CMP_EQ_OQ));
    return _mm256_blendv_pd(r, tiny_val, tiny);
}

struct SqConsts {
    __m256d tx, ty, tz;
    __m256d r0, r1, r2, r3, r4, r5, r6, r7, r8;
    __m256d inv_ax, inv_ay, inv_az;
    __m256d p_xy, p_ratio, p_z;

    explicit SqConsts(const SqEval& sq)
        : tx(_mm256_set1_pd(sq.trans[0])),
          ty(_mm256_set1_pd(sq.trans[1])),
          tz(_mm256_set1_pd(sq.trans[2])),
          r0(_mm256_set1_pd(sq.rot[0])),
          r1(_mm256_set1_pd(sq.rot[1])),
          r2(_mm256_set1_pd(sq.rot[2])),
          r3(_mm256_set1_pd(sq.rot[3])),
          r4(_mm256_set1_pd(sq.rot[4])),
          r5(_mm256_set1_pd(sq.rot[5])),
          r6(_mm256_set1_pd(sq.rot[6])),
          r7(_mm256_set1_pd(sq.rot[7])),
          r8(_mm256_set1_pd(sq.rot[8])),
          inv_ax(_mm256_set1_pd(sq.inv_a[0])),
          inv_ay(_mm256_set1_pd(sq.inv_a[1])),
          inv_az(_mm256_set1_pd(sq.inv_a[2])),
          p_xy(_mm256_set1_pd(sq.p_xy)),
          p_ratio(_mm256_set1_pd(sq.p_ratio)),
          p_z(_mm256_set1_pd(sq.p_z)) {}

    void canonical(__m256d px, __m256d py, __m256d pz, __m256d& cx, __m256d& cy,
                   __m256d& cz) const {
        const __m256d dx = _mm256_sub_pd(px, tx);
        const __m256d dy = _mm256_sub_pd(py, ty);
        const __m256d dz = _mm256_sub_pd(pz, tz);
        cx = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(r0, dx), _mm256_mul_pd(r1, dy)),
                           _mm256_mul_pd(r2, dz));
        cy = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(r3, dx), _mm256_mul_pd(r4, dy)),
                           _mm256_mul_pd(r5, dz));
        cz = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(r6, dx), _mm256_mul_pd(r7, dy)),
                           _mm256_mul_pd(r8, dz));
    }

    __m256d implicit(__m256d cx, __m256d cy, __m256d cz) const {
        const __m256d ux = _mm256_mul_pd(_mm256_and_pd(cx, kAbsMask), inv_ax);
        const __m256d uy = _mm256_mul_pd(_mm256_and_pd(cy, kAbsMask), inv_ay);
        const __m256d uz = _mm256_mul_pd(_mm256_and_pd(cz, kAbsMask), inv_az);
        const __m256d g = _mm256_add_pd(vpos_pow(ux, p_xy), vpos_pow(uy, p_xy));
        return _mm256_add_pd(vpos_pow(g, p_ratio), vpos_pow(uz, p_z));
    }
};

}  // namespace

void sq_implicit(const SqEval& sq, const double* px, const double* py, const double* pz,
                 std::size_t n, double* out) {
    const SqConsts c(sq);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d cx, cy, cz;
        c.canonical(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), _mm256_loadu_pd(pz + i),
                    cx, cy, cz);
        _mm256_storeu_pd(out + i, c.implicit(cx, cy, cz));
    }
    for (; i < n; ++i) out[i] = detail::sq_implicit_one(sq, px[i], py[i], pz[i]);
}

void sq_radial_distance(const SqEval& sq, const double* px, const double* py, const double* pz,
                        std::size_t n, double* out) {
    const SqConsts c(sq);
    const __m256d p_rad = _mm256_set1_pd(sq.p_rad);
    const __m256d neg_min_axis = _mm256_set1_pd(-sq.min_axis);
    const __m256d center_eps = _mm256_set1_pd(detail::kCenterRadiusSq);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d cx, cy, cz;
        c.canonical(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), _mm256_loadu_pd(pz + i),
                    cx, cy, cz);
        const __m256d r2 = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(cx, cx), _mm256_mul_pd(cy, cy)), _mm256_mul_pd(cz, cz));
        const __m256d at_center = _mm256_cmp_pd(r2, center_eps, _CMP_LT_OQ);
        const __m256d f = c.implicit(cx, cy, cz);
        const __m256d shrink = vpos_pow(f, p_rad);
        __m256d d = _mm256_mul_pd(_mm256_sqrt_pd(r2), _mm256_sub_pd(kOne, shrink));
        d = _mm256_blendv_pd(d, neg_min_axis, at_center);
        _mm256_storeu_pd(out + i, d);
    }
    for (; i < n; ++i) out[i] = detail::sq_radial_one(sq, px[i], py[i], pz[i]);
}

double min_dist_sq(const TriangleSoa& tris, std::size_t begin, std::size_t end,
                   const double p[3]) {
    const __m256d px = _mm256_set1_pd(p[0]);
    const __m256d py = _mm256_set1_pd(p[1]);
    const __m256d pz = _mm256_set1_pd(p[2]);
    __m256d best = kInf;
    std::size_t i = begin;
    for (; i + 4 <= end; i += 4) {
        const __m256d ax = _mm256_loadu_pd(tris.ax.data() + i);
        const __m256d ay = _mm256_loadu_pd(tris.ay.data() + i);
        const __m256d az = _mm256_loadu_pd(tris.az.data() + i);
        const __m256d bx = _mm256_loadu_pd(tris.bx.data() + i);
        const __m256d by = _mm256_loadu_pd(tris.by.data() + i);
        const __m256d bz = _mm256_loadu_pd(tris.bz.data() + i);
        const __m256d cx = _mm256_loadu_pd(tris.cx.data() + i);
        const __m256d cy = _mm256_loadu_pd(tris.cy.data() + i);
        const __m256d cz = _mm256_loadu_pd(tris.cz.data() + i);

        const __m256d abx = _mm256_sub_pd(bx, ax), aby = _mm256_sub_pd(by, ay),
                      abz = _mm256_sub_pd(bz, az);
        const __m256d acx = _mm256_sub_pd(cx, ax), acy = _mm256_sub_pd(cy, ay),
                      acz = _mm256_sub_pd(cz, az);
        const __m256d bcx = _mm256_sub_pd(cx, bx), bcy = _mm256_sub_pd(cy, by),
                      bcz = _mm256_sub_pd(cz, bz);
        const __m256d apx = _mm256_sub_pd(px, ax), apy = _mm256_sub_pd(py, ay),
                      apz = _mm256_sub_pd(pz, az);
        const __m256d bpx = _mm256_sub_pd(px, bx), bpy = _mm256_sub_pd(py, by),
                      bpz = _mm256_sub_pd(pz, bz);
        const __m256d cpx = _mm256_sub_pd(px, cx), cpy = _mm256_sub_pd(py, cy),
                      cpz = _mm256_sub_pd(pz, cz);

        auto dot3 = [](__m256d x1, __m256d y1, __m256d z1, __m256d x2, __m256d y2, __m256d z2) {
            return _mm256_add_pd(
                _mm256_add_pd(_mm256_mul_pd(x1, x2), _mm256_mul_pd(y1, y2)),
                _mm256_mul_pd(z1, z2));
        };

        const __m256d ab_ab = dot3(abx, aby, abz, abx, aby, abz);
        const __m256d ac_ac = dot3(acx, acy, acz, acx, acy, acz);
        const __m256d bc_bc = dot3(bcx, bcy, bcz, bcx, bcy, bcz);
        const __m256d d1 = dot3(abx, aby, abz, apx, apy, apz);
        const __m256d d2 = dot3(acx, acy, acz, apx, apy, apz);
        const __m256d d3 = dot3(abx, aby, abz, bpx, bpy, bpz);
        const __m256d d4 = dot3(acx, acy, acz, bpx, bpy, bpz);
        const __m256d d5 = dot3(abx, aby, abz, cpx, cpy, cpz);
        const __m256d d6 = dot3(acx, acy, acz, cpx, cpy, cpz);
        const __m256d d7 = dot3(bcx, bcy, bcz, bpx, bpy, bpz);

        const __m256d t_ab = vclamp01(_mm256_div_pd(d1, ab_ab));
        const __m256d t_ac = vclamp01(_mm256_div_pd(d2, ac_ac));
        const __m256d t_bc = vclamp01(_mm256_div_pd(d7, bc_bc));

        __m256d ex = _mm256_sub_pd(apx, _mm256_mul_pd(t_ab, abx));
        __m256d ey = _mm256_sub_pd(apy, _mm256_mul_pd(t_ab, aby));
        __m256d ez = _mm256_sub_pd(apz, _mm256_mul_pd(t_ab, abz));
        const __m256d dist_ab = dot3(ex, ey, ez, ex, ey, ez);
        ex = _mm256_sub_pd(apx, _mm256_mul_pd(t_ac, acx));
        ey = _mm256_sub_pd(apy, _mm256_mul_pd(t_ac, acy));
        ez = _mm256_sub_pd(apz, _mm256_mul_pd(t_ac, acz));
        const __m256d dist_ac = dot3(ex, ey, ez, ex, ey, ez);
        ex = _mm256_sub_pd(bpx, _mm256_mul_pd(t_bc, bcx));
        ey = _mm256_sub_pd(bpy, _mm256_mul_pd(t_bc, bcy));
        ez = _mm256_sub_pd(bpz, _mm256_mul_pd(t_bc, bcz));
        const __m256d dist_bc = dot3(ex, ey, ez, ex, ey, ez);

        const __m256d nx = _mm256_sub_pd(_mm256_mul_pd(aby, acz), _mm256_mul_pd(abz, acy));
        const __m256d ny = _mm256_sub_pd(_mm256_mul_pd(abz, acx), _mm256_mul_pd(abx, acz));
        const __m256d nz = _mm256_sub_pd(_mm256_mul_pd(abx, acy), _mm256_mul_pd(aby, acx));
        const __m256d nn = dot3(nx, ny, nz, nx, ny, nz);
        const __m256d dplane = dot3(apx, apy, apz, nx, ny, nz);

        const __m256d va = _mm256_sub_pd(_mm256_mul_pd(d3, d6), _mm256_mul_pd(d5, d4));
        const __m256d vb = _mm256_sub_pd(_mm256_mul_pd(d5, d2), _mm256_mul_pd(d1, d6));
        const __m256d vc = _mm256_sub_pd(_mm256_mul_pd(d1, d4), _mm256_mul_pd(d3, d2));
        const __m256d inside = _mm256_and_pd(
            _mm256_and_pd(_mm256_cmp_pd(va, kZero, _CMP_GE_OQ),
                          _mm256_cmp_pd(vb, kZero, _CMP_GE_OQ)),
            _mm256_and_pd(_mm256_cmp_pd(vc, kZero, _CMP_GE_OQ),
                          _mm256_cmp_pd(nn, kZero, _CMP_GT_OQ)));
        const __m256d face_raw = _mm256_div_pd(_mm256_mul_pd(dplane, dplane), nn);
        const __m256d dist_face = _mm256_blendv_pd(kInf, face_raw, inside);

        const __m256d e_min = vmin(dist_ab, dist_ac);
        const __m256d f_min = vmin(dist_bc, dist_face);
        best = vmin(vmin(e_min, f_min), best);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double result = lanes[0];
    result = lanes[1] < result ? lanes[1] : result;
    result = lanes[2] < result ? lanes[2] : result;
    result = lanes[3] < result ? lanes[3] : result;
    for (; i < end; ++i) {
        const double d = detail::tri_dist_sq_one(p[0], p[1], p[2], tris.ax[i], tris.ay[i],
                                                 tris.az[i], tris.bx[i], tris.by[i], tris.bz[i],
                                                 tris.cx[i], tris.cy[i], tris.cz[i]);
        result = d < result ? d : result;
    }
    return result;
}

AntipodalCounts antipodal_counts(const ContactSoa& contacts, const double rot_wg[9],
                                 const double origin[3], const double box_lo[3],
                                 const double box_hi[3], const double f_world[3],
                                 double cos_theta) {
    AntipodalCounts counts;
    const std::size_t n = contacts.size();
    const __m256d r0 = _mm256_set1_pd(rot_wg[0]), r1 = _mm256_set1_pd(rot_wg[1]),
                  r2 = _mm256_set1_pd(rot_wg[2]), r3 = _mm256_set1_pd(rot_wg[3]),
                  r4 = _mm256_set1_pd(rot_wg[4]), r5 = _mm256_set1_pd(rot_wg[5]),
                  r6 = _mm256_set1_pd(rot_wg[6]), r7 = _mm256_set1_pd(rot_wg[7]),
                  r8 = _mm256_set1_pd(rot_wg[8]);
    const __m256d ox = _mm256_set1_pd(origin[0]), oy = _mm256_set1_pd(origin[1]),
                  oz = _mm256_set1_pd(origin[2]);
    const __m256d lo0 = _mm256_set1_pd(box_lo[0]), lo1 = _mm256_set1_pd(box_lo[1]),
                  lo2 = _mm256_set1_pd(box_lo[2]);
    const __m256d hi0 = _mm256_set1_pd(box_hi[0]), hi1 = _mm256_set1_pd(box_hi[1]),
                  hi2 = _mm256_set1_pd(box_hi[2]);
    const __m256d f0 = _mm256_set1_pd(f_world[0]), f1 = _mm256_set1_pd(f_world[1]),
                  f2 = _mm256_set1_pd(f_world[2]);
    const __m256d ct = _mm256_set1_pd(cos_theta);
    const __m256d nct = _mm256_set1_pd(-cos_theta);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(contacts.px.data() + i), ox);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(contacts.py.data() + i), oy);
        const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(contacts.pz.data() + i), oz);
        const __m256d gx = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(r0, dx), _mm256_mul_pd(r1, dy)), _mm256_mul_pd(r2, dz));
        const __m256d gy = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(r3, dx), _mm256_mul_pd(r4, dy)), _mm256_mul_pd(r5, dz));
        const __m256d gz = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(r6, dx), _mm256_mul_pd(r7, dy)), _mm256_mul_pd(r8, dz));
        const __m256d in_box = _mm256_and_pd(
            _mm256_and_pd(_mm256_and_pd(_mm256_cmp_pd(gx, lo0, _CMP_GE_OQ),
                                        _mm256_cmp_pd(gx, hi0, _CMP_LE_OQ)),
                          _mm256_and_pd(_mm256_cmp_pd(gy, lo1, _CMP_GE_OQ),
                                        _mm256_cmp_pd(gy, hi1, _CMP_LE_OQ))),
            _mm256_and_pd(_mm256_cmp_pd(gz, lo2, _CMP_GE_OQ),
                          _mm256_cmp_pd(gz, hi2, _CMP_LE_OQ)));
        const __m256d d = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(contacts.nx.data() + i), f0),
                          _mm256_mul_pd(_mm256_loadu_pd(contacts.ny.data() + i), f1)),
            _mm256_mul_pd(_mm256_loadu_pd(contacts.nz.data() + i), f2));
        const __m256d pos = _mm256_and_pd(in_box, _mm256_cmp_pd(d, ct, _CMP_GE_OQ));
        const __m256d neg = _mm256_and_pd(in_box, _mm256_cmp_pd(d, nct, _CMP_LE_OQ));
        counts.positive += __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(pos)));
        counts.negative += __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(neg)));
    }
    for (; i < n; ++i) {
        const detail::ContactClass c = detail::classify_contact_one(
            contacts.px[i], contacts.py[i], contacts.pz[i], contacts.nx[i], contacts.ny[i],
            contacts.nz[i], rot_wg, origin, box_lo, box_hi, f_world, cos_theta);
        counts.positive += c.positive ? 1 : 0;
        counts.negative += c.negative ? 1 : 0;
    }
    return counts;
}

void pos_pow_batch(const double* base, const double* exponent, std::size_t n, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i,
                         vpos_pow(_mm256_loadu_pd(base + i), _mm256_loadu_pd(exponent + i)));
    }
    for (; i < n; ++i) out[i] = detail::pos_pow(base[i], exponent[i]);
}

}  // namespace sqgrasp::kernels::avx2
