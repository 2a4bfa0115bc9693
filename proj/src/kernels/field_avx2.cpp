#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "uvprop/kernels.hpp"

#include "kernel_math.hpp"

// Four-lane mirror of detail::eval_point. Only correctly-rounded primitives
// are used in the identical order, so results match the scalar reference
// bit-for-bit (covered by the equivalence tests).

namespace uvprop::kernels {

namespace {

namespace d = detail;

struct SinCos4 {
    __m256d s;
    __m256d c;
};

inline SinCos4 sincos4(__m256d x) {
    const __m256d k =
        _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(d::kTwoOverPi)),
                        _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(d::kPiO2Hi), x);
    r = _mm256_fnmadd_pd(k, _mm256_set1_pd(d::kPiO2Mid), r);
    r = _mm256_fnmadd_pd(k, _mm256_set1_pd(d::kPiO2Lo), r);
    const __m256d z = _mm256_mul_pd(r, r);

    __m256d p = _mm256_set1_pd(d::kS6);
    p = _mm256_fmadd_pd(z, p, _mm256_set1_pd(d::kS5));
    p = _mm256_fmadd_pd(z, p, _mm256_set1_pd(d::kS4));
    p = _mm256_fmadd_pd(z, p, _mm256_set1_pd(d::kS3));
    p = _mm256_fmadd_pd(z, p, _mm256_set1_pd(d::kS2));
    p = _mm256_fmadd_pd(z, p, _mm256_set1_pd(d::kS1));
    const __m256d rz = _mm256_mul_pd(r, z);
    const __m256d ps = _mm256_fmadd_pd(rz, p, r);

    __m256d q = _mm256_set1_pd(d::kC6);
    q = _mm256_fmadd_pd(z, q, _mm256_set1_pd(d::kC5));
    q = _mm256_fmadd_pd(z, q, _mm256_set1_pd(d::kC4));
    q = _mm256_fmadd_pd(z, q, _mm256_set1_pd(d::kC3));
    q = _mm256_fmadd_pd(z, q, _mm256_set1_pd(d::kC2));
    q = _mm256_fmadd_pd(z, q, _mm256_set1_pd(d::kC1));
    const __m256d zz = _mm256_mul_pd(z, z);
    const __m256d base = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0));
    const __m256d pc = _mm256_fmadd_pd(zz, q, base);

    // Quadrant selection: q&1 swaps sin/cos, q&2 flips the sin sign,
    // (q+1)&2 flips the cos sign.
    const __m128i k32 = _mm256_cvtpd_epi32(k);
    const __m256i k64 = _mm256_cvtepi32_epi64(k32);
    const __m256i one_i = _mm256_set1_epi64x(1);
    const __m256i two_i = _mm256_set1_epi64x(2);
    const __m256i swap_i = _mm256_cmpeq_epi64(_mm256_and_si256(k64, one_i), one_i);
    const __m256i negs_i = _mm256_cmpeq_epi64(_mm256_and_si256(k64, two_i), two_i);
    const __m256i kp1 = _mm256_add_epi64(k64, one_i);
    const __m256i negc_i = _mm256_cmpeq_epi64(_mm256_and_si256(kp1, two_i), two_i);

    const __m256d swap = _mm256_castsi256_pd(swap_i);
    const __m256d signbit = _mm256_set1_pd(-0.0);
    const __m256d s_pre = _mm256_blendv_pd(ps, pc, swap);
    const __m256d c_pre = _mm256_blendv_pd(pc, ps, swap);
    SinCos4 out;
    out.s = _mm256_xor_pd(s_pre, _mm256_and_pd(_mm256_castsi256_pd(negs_i), signbit));
    out.c = _mm256_xor_pd(c_pre, _mm256_and_pd(_mm256_castsi256_pd(negc_i), signbit));
    return out;
}

inline __m256d log10_4(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i expf = _mm256_srli_epi64(bits, 52);
    // int64 -> double via the 2^52 bias trick (the field is in [0, 2047]).
    __m256d e = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_or_si256(expf, _mm256_set1_epi64x(0x4330000000000000LL))),
        _mm256_set1_pd(d::kExpBiasShift));
    e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(static_cast<long long>(d::kMantissaMask))),
        _mm256_set1_epi64x(static_cast<long long>(d::kOneBits))));
    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(d::kSqrt2), _CMP_GE_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    e = _mm256_blendv_pd(e, _mm256_add_pd(e, _mm256_set1_pd(1.0)), big);

    const __m256d f = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
    const __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
    const __m256d z = _mm256_mul_pd(s, s);
    const __m256d w = _mm256_mul_pd(z, z);
    __m256d t1 = _mm256_fmadd_pd(w, _mm256_set1_pd(d::kLg6), _mm256_set1_pd(d::kLg4));
    t1 = _mm256_fmadd_pd(w, t1, _mm256_set1_pd(d::kLg2));
    t1 = _mm256_mul_pd(w, t1);
    __m256d t2 = _mm256_fmadd_pd(w, _mm256_set1_pd(d::kLg7), _mm256_set1_pd(d::kLg5));
    t2 = _mm256_fmadd_pd(w, t2, _mm256_set1_pd(d::kLg3));
    t2 = _mm256_fmadd_pd(w, t2, _mm256_set1_pd(d::kLg1));
    t2 = _mm256_mul_pd(z, t2);
    const __m256d r = _mm256_add_pd(t2, t1);
    const __m256d hfsq = _mm256_mul_pd(_mm256_set1_pd(0.5), _mm256_mul_pd(f, f));
    const __m256d lnm =
        _mm256_sub_pd(f, _mm256_sub_pd(hfsq, _mm256_mul_pd(s, _mm256_add_pd(hfsq, r))));
    return _mm256_fmadd_pd(lnm, _mm256_set1_pd(d::kInvLn10),
                           _mm256_mul_pd(e, _mm256_set1_pd(d::kLog10Two)));
}

}  // namespace

void compute_field_avx2(const FieldParams& p, const FieldBatch& b) {
    const d::FieldConsts c =
        d::make_consts(p.vehicle_height, p.street_width, p.wavelength, p.gamma_g, p.gamma_b);
    const std::size_t n = b.dist.size();

    const __m256d hv = _mm256_set1_pd(c.hv);
    const __m256d sv = _mm256_set1_pd(c.s);
    const __m256d kv = _mm256_set1_pd(c.k_phase);
    const __m256d av = _mm256_set1_pd(c.a_fspl);
    const __m256d ggv = _mm256_set1_pd(c.gg);
    const __m256d gbv = _mm256_set1_pd(c.gb);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d twenty = _mm256_set1_pd(20.0);
    const __m256d floorv = _mm256_set1_pd(d::kFloorAbsF);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dist = _mm256_loadu_pd(&b.dist[i]);
        const __m256d alt = _mm256_loadu_pd(&b.alt[i]);
        const __m256d nwr =
            _mm256_setr_pd(static_cast<double>(b.num_wr[i]), static_cast<double>(b.num_wr[i + 1]),
                           static_cast<double>(b.num_wr[i + 2]),
                           static_cast<double>(b.num_wr[i + 3]));

        const __m256d dz = _mm256_sub_pd(alt, hv);
        const __m256d dzp = _mm256_add_pd(alt, hv);
        const __m256d t_dz = _mm256_mul_pd(dz, dz);
        const __m256d d_los = _mm256_sqrt_pd(_mm256_fmadd_pd(dist, dist, t_dz));
        const __m256d d_ref_g =
            _mm256_sqrt_pd(_mm256_fmadd_pd(dist, dist, _mm256_mul_pd(dzp, dzp)));
        const __m256d lat = _mm256_fmadd_pd(sv, sv, t_dz);
        const __m256d d_ref_b = _mm256_sqrt_pd(_mm256_fmadd_pd(dist, dist, lat));

        const __m256d dphi_g = _mm256_mul_pd(kv, _mm256_sub_pd(d_los, d_ref_g));
        const __m256d dphi_b = _mm256_mul_pd(kv, _mm256_sub_pd(d_los, d_ref_b));
        const SinCos4 g = sincos4(dphi_g);
        const SinCos4 w = sincos4(dphi_b);

        const __m256d amp_b = _mm256_mul_pd(nwr, gbv);
        __m256d f_re = _mm256_fmadd_pd(ggv, g.c, one);
        f_re = _mm256_fmadd_pd(amp_b, w.c, f_re);
        __m256d f_im = _mm256_mul_pd(ggv, g.s);
        f_im = _mm256_fmadd_pd(amp_b, w.s, f_im);
        const __m256d f_sq = _mm256_fmadd_pd(f_re, f_re, _mm256_mul_pd(f_im, f_im));
        const __m256d abs_f = _mm256_sqrt_pd(f_sq);
        const __m256d clip_mask = _mm256_cmp_pd(abs_f, floorv, _CMP_LT_OQ);
        const __m256d abs_clamped = _mm256_max_pd(abs_f, floorv);
        const __m256d pl = _mm256_mul_pd(
            twenty,
            _mm256_sub_pd(log10_4(_mm256_mul_pd(av, d_los)), log10_4(abs_clamped)));

        _mm256_storeu_pd(&b.d_los[i], d_los);
        _mm256_storeu_pd(&b.d_ref_g[i], d_ref_g);
        _mm256_storeu_pd(&b.d_ref_b[i], d_ref_b);
        _mm256_storeu_pd(&b.dphi_g[i], dphi_g);
        _mm256_storeu_pd(&b.dphi_b[i], dphi_b);
        _mm256_storeu_pd(&b.pl_db[i], pl);
        const int clip_bits = _mm256_movemask_pd(clip_mask);
        b.clipped[i] = static_cast<std::uint8_t>(clip_bits & 1);
        b.clipped[i + 1] = static_cast<std::uint8_t>((clip_bits >> 1) & 1);
        b.clipped[i + 2] = static_cast<std::uint8_t>((clip_bits >> 2) & 1);
        b.clipped[i + 3] = static_cast<std::uint8_t>((clip_bits >> 3) & 1);
    }
    for (; i < n; ++i) {
        const d::PointResult r =
            d::eval_point(c, b.dist[i], b.alt[i], static_cast<double>(b.num_wr[i]));
        b.d_los[i] = r.d_los;
        b.d_ref_g[i] = r.d_ref_g;
        b.d_ref_b[i] = r.d_ref_b;
        b.dphi_g[i] = r.dphi_g;
        b.dphi_b[i] = r.dphi_b;
        b.pl_db[i] = r.pl_db;
        b.clipped[i] = r.clipped ? 1 : 0;
    }
}

}  // namespace uvprop::kernels
