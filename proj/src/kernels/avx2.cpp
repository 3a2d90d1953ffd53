// 4-lane double kernels. Polynomial exp/log follow the classic Cephes
// rational approximations; exp(0) == 1 holds exactly, which keeps the
// half-probability anchor of the acceptance curve bit-identical to the
// scalar path.

#include <immintrin.h>

#include <cmath>
#include <cstring>

#include "greenstream/kernels/kernels.hpp"

namespace greenstream::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline __m256d abs_pd(__m256d x) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

// exp over the full double range, underflow flushed to zero below the
// smallest normal result. Arguments here are always <= 0.
inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);

    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

    __m256d lo_mask = _mm256_cmp_pd(x, _mm256_set1_pd(-708.39641853226408), _CMP_LT_OQ);
    __m256d hi_mask = _mm256_cmp_pd(x, _mm256_set1_pd(709.78271289338397), _CMP_GT_OQ);

    __m256d n = _mm256_floor_pd(_mm256_fmadd_pd(x, log2e, _mm256_set1_pd(0.5)));
    __m256d r = _mm256_fnmadd_pd(n, c1, x);
    r = _mm256_fnmadd_pd(n, c2, r);

    __m256d rr = _mm256_mul_pd(r, r);
    __m256d pe = _mm256_fmadd_pd(p0, rr, p1);
    pe = _mm256_fmadd_pd(pe, rr, p2);
    pe = _mm256_mul_pd(pe, r);
    __m256d qe = _mm256_fmadd_pd(q0, rr, q1);
    qe = _mm256_fmadd_pd(qe, rr, q2);
    qe = _mm256_fmadd_pd(qe, rr, q3);
    __m256d frac = _mm256_div_pd(pe, _mm256_sub_pd(qe, pe));
    __m256d y = _mm256_fmadd_pd(frac, _mm256_set1_pd(2.0), _mm256_set1_pd(1.0));

    __m128i n32 = _mm256_cvtpd_epi32(n);
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    __m256i ebits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    y = _mm256_mul_pd(y, _mm256_castsi256_pd(ebits));

    y = _mm256_andnot_pd(lo_mask, y);
    y = _mm256_blendv_pd(y, _mm256_set1_pd(HUGE_VAL), hi_mask);
    return y;
}

// log for positive normal inputs; callers only pass values in (1, 2].
inline __m256d log_pd(__m256d x) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d one = _mm256_set1_pd(1.0);

    const __m256d p0 = _mm256_set1_pd(1.01875663804580931796e-4);
    const __m256d p1 = _mm256_set1_pd(4.97494994976747001425e-1);
    const __m256d p2 = _mm256_set1_pd(4.70579119878881725854e0);
    const __m256d p3 = _mm256_set1_pd(1.44989225341610930846e1);
    const __m256d p4 = _mm256_set1_pd(1.79368678507819816313e1);
    const __m256d p5 = _mm256_set1_pd(7.70838733755885391666e0);
    const __m256d q0 = _mm256_set1_pd(1.12873587189167450590e1);
    const __m256d q1 = _mm256_set1_pd(4.52279145837532221105e1);
    const __m256d q2 = _mm256_set1_pd(8.29875266912776603211e1);
    const __m256d q3 = _mm256_set1_pd(7.11544750618563894466e1);
    const __m256d q4 = _mm256_set1_pd(2.31251620126765340583e1);

    __m256i bits = _mm256_castpd_si256(x);
    __m256i expo = _mm256_srli_epi64(bits, 52);
    expo = _mm256_sub_epi64(expo, _mm256_set1_epi64x(1023));
    __m256i mant_bits = _mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
        _mm256_set1_epi64x(0x3ff0000000000000LL));
    __m256d m = _mm256_castsi256_pd(mant_bits);

    // 32-bit lanes suffice for the exponent range of normal doubles.
    __m256d e = _mm256_cvtepi32_pd(_mm256_castsi256_si128(
        _mm256_permutevar8x32_epi32(expo, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0))));

    __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730950488), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, half), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, one));

    __m256d f = _mm256_sub_pd(m, one);
    __m256d z = _mm256_mul_pd(f, f);

    __m256d pn = _mm256_fmadd_pd(p0, f, p1);
    pn = _mm256_fmadd_pd(pn, f, p2);
    pn = _mm256_fmadd_pd(pn, f, p3);
    pn = _mm256_fmadd_pd(pn, f, p4);
    pn = _mm256_fmadd_pd(pn, f, p5);
    __m256d qn = _mm256_add_pd(f, q0);
    qn = _mm256_fmadd_pd(qn, f, q1);
    qn = _mm256_fmadd_pd(qn, f, q2);
    qn = _mm256_fmadd_pd(qn, f, q3);
    qn = _mm256_fmadd_pd(qn, f, q4);

    __m256d y = _mm256_mul_pd(_mm256_mul_pd(f, z), _mm256_div_pd(pn, qn));
    y = _mm256_fmadd_pd(e, _mm256_set1_pd(-2.121944400546905827679e-4), y);
    y = _mm256_fnmadd_pd(half, z, y);
    __m256d out = _mm256_add_pd(f, y);
    return _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), out);
}

struct SigmoidParts {
    __m256d p;     // stable logistic value
    __m256d e;     // exp(-|t|)
    __m256d denom; // 1 + e
};

inline SigmoidParts sigmoid_pd(__m256d t) {
    SigmoidParts s;
    s.e = exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), abs_pd(t)));
    s.denom = _mm256_add_pd(_mm256_set1_pd(1.0), s.e);
    __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), s.denom);
    __m256d neg = _mm256_cmp_pd(t, _mm256_setzero_pd(), _CMP_LT_OQ);
    s.p = _mm256_blendv_pd(inv, _mm256_mul_pd(s.e, inv), neg);
    return s;
}

inline double sigmoid_stable(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    double e = std::exp(t);
    return e / (1.0 + e);
}

void accept_probabilities_avx2(const double* offer, const double* r_min,
                               const double* delta, double* p,
                               std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d t = _mm256_mul_pd(
            _mm256_loadu_pd(delta + i),
            _mm256_sub_pd(_mm256_loadu_pd(offer + i), _mm256_loadu_pd(r_min + i)));
        _mm256_storeu_pd(p + i, sigmoid_pd(t).p);
    }
    for (; i < n; ++i)
        p[i] = sigmoid_stable(delta[i] * (offer[i] - r_min[i]));
}

PolicyTerms policy_terms_avx2(const double* p, const double* offer,
                              const double* flex, std::size_t n) {
    __m256d spr = _mm256_setzero_pd();
    __m256d spx = _mm256_setzero_pd();
    __m256d sp = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d pv = _mm256_loadu_pd(p + i);
        spr = _mm256_fmadd_pd(pv, _mm256_loadu_pd(offer + i), spr);
        spx = _mm256_fmadd_pd(pv, _mm256_loadu_pd(flex + i), spx);
        sp = _mm256_add_pd(sp, pv);
    }
    PolicyTerms t;
    t.sum_p_r = hsum(spr);
    t.sum_p_x = hsum(spx);
    t.sum_p = hsum(sp);
    for (; i < n; ++i) {
        t.sum_p_r += p[i] * offer[i];
        t.sum_p_x += p[i] * flex[i];
        t.sum_p += p[i];
    }
    return t;
}

LogisticTerms logistic_terms_avx2(const double* offer,
                                  const std::uint8_t* response, std::size_t n,
                                  double theta0, double theta1) {
    const __m256d th0 = _mm256_set1_pd(theta0);
    const __m256d th1 = _mm256_set1_pd(theta1);
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d all = _mm256_setzero_pd();
    __m256d ag0 = _mm256_setzero_pd();
    __m256d ag1 = _mm256_setzero_pd();
    __m256d ah00 = _mm256_setzero_pd();
    __m256d ah01 = _mm256_setzero_pd();
    __m256d ah11 = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_loadu_pd(offer + i);
        std::uint32_t packed;
        std::memcpy(&packed, response + i, 4);
        __m256d y = _mm256_cvtepi32_pd(
            _mm_cvtepu8_epi32(_mm_cvtsi32_si128(static_cast<int>(packed))));

        __m256d u = _mm256_fmadd_pd(th1, r, th0);
        SigmoidParts s = sigmoid_pd(u);
        __m256d z = s.p;
        __m256d sp_v = _mm256_add_pd(
            _mm256_max_pd(u, _mm256_setzero_pd()), log_pd(s.denom));
        all = _mm256_add_pd(all, _mm256_fmsub_pd(y, u, sp_v));
        __m256d d = _mm256_sub_pd(y, z);
        ag0 = _mm256_add_pd(ag0, d);
        ag1 = _mm256_fmadd_pd(d, r, ag1);
        __m256d w = _mm256_mul_pd(z, _mm256_sub_pd(one, z));
        ah00 = _mm256_add_pd(ah00, w);
        __m256d wr = _mm256_mul_pd(w, r);
        ah01 = _mm256_add_pd(ah01, wr);
        ah11 = _mm256_fmadd_pd(wr, r, ah11);
    }

    LogisticTerms t;
    t.log_lik = hsum(all);
    t.g0 = hsum(ag0);
    t.g1 = hsum(ag1);
    t.h00 = hsum(ah00);
    t.h01 = hsum(ah01);
    t.h11 = hsum(ah11);
    for (; i < n; ++i) {
        double r = offer[i];
        double y = static_cast<double>(response[i]);
        double u = theta0 + theta1 * r;
        double z = sigmoid_stable(u);
        double sp = (u > 0.0 ? u : 0.0) + std::log1p(std::exp(-std::abs(u)));
        t.log_lik += y * u - sp;
        double d = y - z;
        t.g0 += d;
        t.g1 += d * r;
        double w = z * (1.0 - z);
        t.h00 += w;
        t.h01 += w * r;
        t.h11 += w * r * r;
    }
    return t;
}

} // namespace

const Ops& avx2_ops() {
    static const Ops ops{accept_probabilities_avx2, policy_terms_avx2,
                         logistic_terms_avx2};
    return ops;
}

} // namespace greenstream::kernels
