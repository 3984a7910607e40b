#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

// Shared positive-power algorithm: pos_pow(t, p) = exp2(p * log2(t)) with
// fixed-degree polynomials. The AVX2 lane reimplements exactly this operation
// sequence; keeping coefficients and structure here is what makes the two
// lanes bit-identical. Accuracy is ~2e-14 relative over the ranges the
// superquadric evaluations use (verified against std::pow in the kernel
// tests), far inside the 1e-6 surface-consistency budget.

namespace sqgrasp::kernels::detail {

inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kLn2 = 0.6931471805599453;
inline constexpr double kTwoOverLn2 = 2.8853900817779268;
inline constexpr double kExp2Magic = 4503599627370496.0;  // 2^52
inline constexpr double kTinyBase = 1e-300;
inline constexpr double kOverflowY = 1000.0;

// atanh series for log2: log2(m) = (2/ln2) * (z + z^3/3 + ...) with
// z = (m-1)/(m+1), m in (1/sqrt2, sqrt2].
inline constexpr double kLogCoeff[11] = {
    kTwoOverLn2,        kTwoOverLn2 / 3.0,  kTwoOverLn2 / 5.0,  kTwoOverLn2 / 7.0,
    kTwoOverLn2 / 9.0,  kTwoOverLn2 / 11.0, kTwoOverLn2 / 13.0, kTwoOverLn2 / 15.0,
    kTwoOverLn2 / 17.0, kTwoOverLn2 / 19.0, kTwoOverLn2 / 21.0,
};

// Taylor coefficients 1/k! for exp on [-ln2/2, ln2/2].
inline constexpr double kExpCoeff[14] = {
    1.0,
    1.0,
    1.0 / 2.0,
    1.0 / 6.0,
    1.0 / 24.0,
    1.0 / 120.0,
    1.0 / 720.0,
    1.0 / 5040.0,
    1.0 / 40320.0,
    1.0 / 362880.0,
    1.0 / 3628800.0,
    1.0 / 39916800.0,
    1.0 / 479001600.0,
    1.0 / 6227020800.0,
};

// log2 of a normal positive double >= kTinyBase.
inline double log2_pos(double t) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(t);
    double e = static_cast<double>(static_cast<std::int64_t>((bits >> 52) & 0x7ffULL) - 1023);
    double m = std::bit_cast<double>((bits & 0x000fffffffffffffULL) | 0x3ff0000000000000ULL);
    if (m > kSqrt2) {
        m = m * 0.5;
        e = e + 1.0;
    }
    const double z = (m - 1.0) / (m + 1.0);
    const double z2 = z * z;
    double s = kLogCoeff[10];
    for (int k = 9; k >= 0; --k) s = s * z2 + kLogCoeff[k];
    return e + z * s;
}

// exp2 for |y| < kOverflowY.
inline double exp2_inner(double y) {
    const double n = std::nearbyint(y);
    const double f = y - n;
    const double q = f * kLn2;
    double s = kExpCoeff[13];
    for (int k = 12; k >= 0; --k) s = s * q + kExpCoeff[k];
    const auto ni = static_cast<std::int64_t>(n);
    const double scale = std::bit_cast<double>(static_cast<std::uint64_t>(ni + 1023) << 52);
    return s * scale;
}

inline double pos_pow(double t, double p) {
    if (t < kTinyBase) {
        if (p > 0.0) return 0.0;
        if (p == 0.0) return 1.0;
        return std::numeric_limits<double>::infinity();
    }
    const double y = p * log2_pos(t);
    if (y <= -kOverflowY) return 0.0;
    if (y >= kOverflowY) return std::numeric_limits<double>::infinity();
    return exp2_inner(y);
}

}  // namespace sqgrasp::kernels::detail
