#include <limits>

#include "sqgrasp/kernels/kernels.hpp"
#include "ops_core.hpp"

namespace sqgrasp::kernels {

void TriangleSoa::reserve(std::size_t n) {
    ax.reserve(n), ay.reserve(n), az.reserve(n);
    bx.reserve(n), by.reserve(n), bz.reserve(n);
    cx.reserve(n), cy.reserve(n), cz.reserve(n);
}

void TriangleSoa::push_back(const double a[3], const double b[3], const double c[3]) {
    ax.push_back(a[0]), ay.push_back(a[1]), az.push_back(a[2]);
    bx.push_back(b[0]), by.push_back(b[1]), bz.push_back(b[2]);
    cx.push_back(c[0]), cy.push_back(c[1]), cz.push_back(c[2]);
}

void ContactSoa::reserve(std::size_t n) {
    px.reserve(n), py.reserve(n), pz.reserve(n);
    nx.reserve(n), ny.reserve(n), nz.reserve(n);
}

void ContactSoa::push_back(const double p[3], const double normal[3]) {
    px.push_back(p[0]), py.push_back(p[1]), pz.push_back(p[2]);
    nx.push_back(normal[0]), ny.push_back(normal[1]), nz.push_back(normal[2]);
}

double pos_pow(double base, double exponent) { return detail::pos_pow(base, exponent); }

double sign_pow(double u, double p) {
    const double mag = detail::pos_pow(u < 0.0 ? -u : u, p);
    return u < 0.0 ? -mag : mag;
}

namespace scalar {

double pos_pow(double base, double exponent) { return detail::pos_pow(base, exponent); }

void sq_implicit(const SqEval& sq, const double* px, const double* py, const double* pz,
                 std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = detail::sq_implicit_one(sq, px[i], py[i], pz[i]);
}

void sq_radial_distance(const SqEval& sq, const double* px, const double* py, const double* pz,
                        std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = detail::sq_radial_one(sq, px[i], py[i], pz[i]);
}

double min_dist_sq(const TriangleSoa& tris, std::size_t begin, std::size_t end,
                   const double p[3]) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = begin; i < end; ++i) {
        const double d = detail::tri_dist_sq_one(p[0], p[1], p[2], tris.ax[i], tris.ay[i],
                                                 tris.az[i], tris.bx[i], tris.by[i], tris.bz[i],
                                                 tris.cx[i], tris.cy[i], tris.cz[i]);
        best = d < best ? d : best;
    }
    return best;
}

AntipodalCounts antipodal_counts(const ContactSoa& contacts, const double rot_wg[9],
                                 const double origin[3], const double box_lo[3],
                                 const double box_hi[3], const double f_world[3],
                                 double cos_theta) {
    AntipodalCounts counts;
    const std::size_t n = contacts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const detail::ContactClass c = detail::classify_contact_one(
            contacts.px[i], contacts.py[i], contacts.pz[i], contacts.nx[i], contacts.ny[i],
            contacts.nz[i], rot_wg, origin, box_lo, box_hi, f_world, cos_theta);
        counts.positive += c.positive ? 1 : 0;
        counts.negative += c.negative ? 1 : 0;
    }
    return counts;
}

}  // namespace scalar
}  // namespace sqgrasp::kernels
