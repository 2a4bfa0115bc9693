#pragma once

// Shared polynomial transcendentals for the field kernels. Every variant
// (scalar, AVX2) evaluates these with the identical operation sequence:
// only correctly-rounded primitives (add, mul, div, sqrt, fma, floor/round)
// are used, so matching the sequence makes the variants bit-identical.
//
// Domain notes: sincos handles |x| < 2^31 * pi/4 via a three-stage
// Cody-Waite reduction (phase arguments in this project stay far below
// that); log10 expects a positive normal double.

#include <bit>
#include <cmath>
#include <cstdint>

namespace uvprop::kernels::detail {

// pi/2 split into 33-bit chunks so k*chunk stays exact for |k| < 2^20; with
// fma the products are unrounded anyway and the residual after three stages
// is ~|k| * 8.5e-33.
inline constexpr double kTwoOverPi = 6.36619772367581382433e-01;
inline constexpr double kPiO2Hi = 1.57079632673412561417e+00;
inline constexpr double kPiO2Mid = 6.07710050630396597660e-11;
inline constexpr double kPiO2Lo = 2.02226624879595063154e-21;

// Minimax coefficients for sin on [-pi/4, pi/4]:
// sin(r) ~ r + r^3 * (S1 + z*(S2 + z*(S3 + z*(S4 + z*(S5 + z*S6))))), z = r^2.
inline constexpr double kS1 = -1.66666666666666324348e-01;
inline constexpr double kS2 = 8.33333333332248946124e-03;
inline constexpr double kS3 = -1.98412698298579493134e-04;
inline constexpr double kS4 = 2.75573137070700676789e-06;
inline constexpr double kS5 = -2.50507602534068634195e-08;
inline constexpr double kS6 = 1.58969099521155010221e-10;

// cos(r) ~ 1 - z/2 + z^2 * (C1 + z*(C2 + z*(C3 + z*(C4 + z*(C5 + z*C6))))).
inline constexpr double kC1 = 4.16666666666666019037e-02;
inline constexpr double kC2 = -1.38888888888741095749e-03;
inline constexpr double kC3 = 2.48015872894767294178e-05;
inline constexpr double kC4 = -2.75573143513906633035e-07;
inline constexpr double kC5 = 2.08757232129817482790e-09;
inline constexpr double kC6 = -1.13596475577881948265e-11;

// log(1+f) rational-approximation coefficients on [sqrt(2)/2 - 1, sqrt(2) - 1].
inline constexpr double kLg1 = 6.666666666666735130e-01;
inline constexpr double kLg2 = 3.999999999940941908e-01;
inline constexpr double kLg3 = 2.857142874366239149e-01;
inline constexpr double kLg4 = 2.222219843214978396e-01;
inline constexpr double kLg5 = 1.818357216161805012e-01;
inline constexpr double kLg6 = 1.531383769920937332e-01;
inline constexpr double kLg7 = 1.479819860511658591e-01;

inline constexpr double kInvLn10 = 4.34294481903251816668e-01;  // 1/ln(10)
inline constexpr double kLog10Two = 3.01029995663981195214e-01;

// Mantissa pivot: m >= sqrt(2) is halved so m ends up in [sqrt(2)/2, sqrt(2)).
inline constexpr double kSqrt2 = 1.41421356237309514547e+00;

inline constexpr std::uint64_t kMantissaMask = 0x000fffffffffffffULL;
inline constexpr std::uint64_t kOneBits = 0x3ff0000000000000ULL;
inline constexpr double kExpBiasShift = 4503599627370496.0;  // 2^52

// sin/cos polynomial cores on the reduced argument.
inline double sin_poly(double r, double z) {
    double p = kS6;
    p = std::fma(z, p, kS5);
    p = std::fma(z, p, kS4);
    p = std::fma(z, p, kS3);
    p = std::fma(z, p, kS2);
    p = std::fma(z, p, kS1);
    const double rz = r * z;
    return std::fma(rz, p, r);
}

inline double cos_poly(double z) {
    double q = kC6;
    q = std::fma(z, q, kC5);
    q = std::fma(z, q, kC4);
    q = std::fma(z, q, kC3);
    q = std::fma(z, q, kC2);
    q = std::fma(z, q, kC1);
    const double zz = z * z;
    const double base = std::fma(-0.5, z, 1.0);
    return std::fma(zz, q, base);
}

struct SinCos {
    double s;
    double c;
};

inline SinCos sincos_impl(double x) {
    const double k = std::nearbyint(x * kTwoOverPi);
    double r = std::fma(-k, kPiO2Hi, x);
    r = std::fma(-k, kPiO2Mid, r);
    r = std::fma(-k, kPiO2Lo, r);
    const double z = r * r;
    const double ps = sin_poly(r, z);
    const double pc = cos_poly(z);
    const auto q = static_cast<std::int64_t>(k) & 3;
    switch (q) {
        case 0: return {ps, pc};
        case 1: return {pc, -ps};
        case 2: return {-ps, -pc};
        default: return {-pc, ps};
    }
}

inline double log10_impl(double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    // (double)(bits >> 52) via the 2^52 bias trick, mirroring the vector
    // variant, which lacks a 64-bit int-to-double conversion.
    double e = std::bit_cast<double>((bits >> 52) | 0x4330000000000000ULL) - kExpBiasShift;
    e -= 1023.0;
    double m = std::bit_cast<double>((bits & kMantissaMask) | kOneBits);
    if (m >= kSqrt2) {
        m *= 0.5;
        e += 1.0;
    }
    const double f = m - 1.0;
    const double s = f / (2.0 + f);
    const double z = s * s;
    const double w = z * z;
    const double t1 = w * std::fma(w, std::fma(w, kLg6, kLg4), kLg2);
    const double t2 = z * std::fma(w, std::fma(w, std::fma(w, kLg7, kLg5), kLg3), kLg1);
    const double r = t2 + t1;
    const double hfsq = 0.5 * (f * f);
    const double lnm = f - (hfsq - s * (hfsq + r));
    return std::fma(lnm, kInvLn10, e * kLog10Two);
}

inline constexpr double kTwoPi = 6.28318530717958647693e+00;
inline constexpr double kFourPi = 1.25663706143591729539e+01;
inline constexpr double kFloorAbsF = 1e-12;

// Per-batch constants derived once so every variant sees identical values.
struct FieldConsts {
    double hv;
    double s;
    double k_phase;  // 2*pi/lambda
    double a_fspl;   // 4*pi/lambda
    double gg;
    double gb;
};

inline FieldConsts make_consts(double vehicle_height, double street_width, double wavelength,
                               double gamma_g, double gamma_b) {
    return {vehicle_height, street_width, kTwoPi / wavelength, kFourPi / wavelength, gamma_g,
            gamma_b};
}

struct PointResult {
    double d_los, d_ref_g, d_ref_b, dphi_g, dphi_b, pl_db;
    bool clipped;
};

// Reference point evaluation. The AVX2 kernel reproduces this exact
// operation sequence four lanes at a time and reuses it for tail points.
inline PointResult eval_point(const FieldConsts& c, double dist, double alt, double num_wr) {
    PointResult out;
    const double dz = alt - c.hv;
    const double dzp = alt + c.hv;
    const double t_dz = dz * dz;
    out.d_los = std::sqrt(std::fma(dist, dist, t_dz));
    out.d_ref_g = std::sqrt(std::fma(dist, dist, dzp * dzp));
    const double lat = std::fma(c.s, c.s, t_dz);
    out.d_ref_b = std::sqrt(std::fma(dist, dist, lat));
    out.dphi_g = c.k_phase * (out.d_los - out.d_ref_g);
    out.dphi_b = c.k_phase * (out.d_los - out.d_ref_b);
    const SinCos g = sincos_impl(out.dphi_g);
    const SinCos b = sincos_impl(out.dphi_b);
    const double amp_b = num_wr * c.gb;
    double f_re = std::fma(c.gg, g.c, 1.0);
    f_re = std::fma(amp_b, b.c, f_re);
    double f_im = c.gg * g.s;
    f_im = std::fma(amp_b, b.s, f_im);
    const double f_sq = std::fma(f_re, f_re, f_im * f_im);
    const double abs_f = std::sqrt(f_sq);
    out.clipped = abs_f < kFloorAbsF;
    const double abs_clamped = abs_f < kFloorAbsF ? kFloorAbsF : abs_f;
    out.pl_db = 20.0 * (log10_impl(c.a_fspl * out.d_los) - log10_impl(abs_clamped));
    return out;
}

}  // namespace uvprop::kernels::detail
