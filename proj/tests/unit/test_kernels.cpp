#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "sqgrasp/common/rng.hpp"
#include "sqgrasp/kernels/kernels.hpp"

using namespace sqgrasp;
namespace k = sqgrasp::kernels;

namespace {

k::SqEval random_eval(Rng& rng) {
    k::SqEval e{};
    for (int i = 0; i < 3; ++i) e.inv_a[i] = 1.0 / rng.uniform(0.05, 2.0);
    const double e1 = rng.uniform(0.1, 1.9);
    const double e2 = rng.uniform(0.1, 1.9);
    e.p_xy = 2.0 / e2;
    e.p_ratio = e2 / e1;
    e.p_z = 2.0 / e1;
    e.p_rad = -e1 / 2.0;
    e.min_axis = 0.05;
    // random roll/pitch/yaw rotation
    const double a = rng.uniform(0, 6.28), b = rng.uniform(0, 6.28), c = rng.uniform(0, 6.28);
    const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b),
                 cc = std::cos(c), sc = std::sin(c);
    const double rot[9] = {cb * cc, -cb * sc, sb,
                           sa * sb * cc + ca * sc, -sa * sb * sc + ca * cc, -sa * cb,
                           -ca * sb * cc + sa * sc, ca * sb * sc + sa * cc, ca * cb};
    std::memcpy(e.rot, rot, sizeof(rot));
    for (int i = 0; i < 3; ++i) e.trans[i] = rng.uniform(-0.5, 0.5);
    return e;
}

}  // namespace

#if defined(SQGRASP_HAVE_AVX2)

TEST_CASE("avx2 pos_pow is bit-identical to scalar") {
    if (!k::avx2::supported()) return;
    Rng rng(17);
    const std::size_t n = 4099;
    std::vector<double> base(n), expo(n), got(n);
    for (std::size_t i = 0; i < n; ++i) {
        base[i] = std::pow(10.0, rng.uniform(-14.0, 14.0));
        expo[i] = rng.uniform(-2.0, 25.0);
    }
    // edge lanes
    base[0] = 0.0;
    base[1] = 1e-310;
    base[2] = 5e123;
    expo[2] = 24.0;  // overflow branch
    base[3] = 1e-200;
    expo[3] = 20.0;  // underflow branch
    expo[4] = 0.0;
    k::avx2::pos_pow_batch(base.data(), expo.data(), n, got.data());
    for (std::size_t i = 0; i < n; ++i) {
        const double ref = k::scalar::pos_pow(base[i], expo[i]);
        INFO(i << ": " << base[i] << "^" << expo[i]);
        CHECK(std::memcmp(&got[i], &ref, sizeof(double)) == 0);
    }
}

TEST_CASE("avx2 superquadric kernels are bit-identical to scalar") {
    if (!k::avx2::supported()) return;
    Rng rng(23);
    for (int trial = 0; trial < 8; ++trial) {
        const k::SqEval eval = random_eval(rng);
        const std::size_t n = 517;
        std::vector<double> xs(n), ys(n), zs(n), ref(n), got(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = rng.uniform(-2.0, 2.0);
            ys[i] = rng.uniform(-2.0, 2.0);
            zs[i] = rng.uniform(-2.0, 2.0);
        }
        xs[0] = eval.trans[0];  // exact center lane
        ys[0] = eval.trans[1];
        zs[0] = eval.trans[2];
        k::scalar::sq_implicit(eval, xs.data(), ys.data(), zs.data(), n, ref.data());
        k::avx2::sq_implicit(eval, xs.data(), ys.data(), zs.data(), n, got.data());
        CHECK(std::memcmp(ref.data(), got.data(), n * sizeof(double)) == 0);
        k::scalar::sq_radial_distance(eval, xs.data(), ys.data(), zs.data(), n, ref.data());
        k::avx2::sq_radial_distance(eval, xs.data(), ys.data(), zs.data(), n, got.data());
        CHECK(std::memcmp(ref.data(), got.data(), n * sizeof(double)) == 0);
    }
}

TEST_CASE("avx2 triangle distance is bit-identical to scalar") {
    if (!k::avx2::supported()) return;
    Rng rng(31);
    k::TriangleSoa tris;
    for (int i = 0; i < 253; ++i) {
        double a[3], b[3], c[3];
        for (int j = 0; j < 3; ++j) {
            a[j] = rng.uniform(-1, 1);
            b[j] = rng.uniform(-1, 1);
            c[j] = rng.uniform(-1, 1);
        }
        tris.push_back(a, b, c);
    }
    for (int q = 0; q < 200; ++q) {
        const double p[3] = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const double ref = k::scalar::min_dist_sq(tris, 0, tris.size(), p);
        const double got = k::avx2::min_dist_sq(tris, 0, tris.size(), p);
        CHECK(std::memcmp(&ref, &got, sizeof(double)) == 0);
    }
}

TEST_CASE("avx2 antipodal counts equal scalar exactly") {
    if (!k::avx2::supported()) return;
    Rng rng(37);
    k::ContactSoa contacts;
    for (int i = 0; i < 4111; ++i) {
        double p[3] = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        double nrm[3] = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double len = std::sqrt(nrm[0] * nrm[0] + nrm[1] * nrm[1] + nrm[2] * nrm[2]);
        for (double& v : nrm) v /= len;
        contacts.push_back(p, nrm);
    }
    const double rot[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    for (int q = 0; q < 20; ++q) {
        const double origin[3] = {rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4),
                                  rng.uniform(-0.4, 0.4)};
        const double lo[3] = {-0.3, -0.2, -0.5};
        const double hi[3] = {0.3, 0.2, 0.5};
        const double f[3] = {1, 0, 0};
        const double ct = std::cos(rng.uniform(0.1, 1.4));
        const auto ref = k::scalar::antipodal_counts(contacts, rot, origin, lo, hi, f, ct);
        const auto got = k::avx2::antipodal_counts(contacts, rot, origin, lo, hi, f, ct);
        CHECK(ref.positive == got.positive);
        CHECK(ref.negative == got.negative);
    }
}

#endif  // SQGRASP_HAVE_AVX2

TEST_CASE("pos_pow tracks std::pow to 1e-12 relative") {
    Rng rng(41);
    double worst = 0.0;
    for (int i = 0; i < 200000; ++i) {
        const double t = std::pow(10.0, rng.uniform(-8.0, 8.0));
        const double p = rng.uniform(0.05, 25.0) * (rng.uniform() < 0.25 ? -0.1 : 1.0);
        const double ref = std::pow(t, p);
        const double got = k::pos_pow(t, p);
        const double rel = std::abs(got - ref) / ref;
        worst = std::max(worst, rel);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("pos_pow edge semantics") {
    CHECK(k::pos_pow(0.0, 2.0) == 0.0);
    CHECK(k::pos_pow(0.0, 0.0) == 1.0);
    CHECK(std::isinf(k::pos_pow(0.0, -1.0)));
    CHECK(k::pos_pow(1.0, 123.0) == 1.0);
    CHECK(k::pos_pow(2.0, 10.0) == doctest::Approx(1024.0).epsilon(1e-14));
    CHECK(std::isinf(k::pos_pow(1e300, 20.0)));
    CHECK(k::pos_pow(1e-300, 20.0) == 0.0);
    CHECK(k::sign_pow(-0.5, 2.0) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(k::sign_pow(0.5, 2.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(k::sign_pow(0.0, 0.5) == 0.0);
}

TEST_CASE("dispatch honors force_level") {
    const k::SimdLevel initial = k::active_level();
    k::force_level(k::SimdLevel::scalar);
    CHECK(k::active_level() == k::SimdLevel::scalar);
    k::force_level(k::detected_level());
    CHECK(k::active_level() == k::detected_level());
    k::force_level(initial);
}
