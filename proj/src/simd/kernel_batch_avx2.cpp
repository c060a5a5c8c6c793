#ifdef KRIGOPT_HAVE_AVX2

#include <immintrin.h>

#include <cmath>

#include "krigopt/simd.hpp"

namespace krigopt::simd {

namespace {

// Vector exp, Cephes-style rational approximation after range reduction
// x = n*ln2 + r. Relative error stays within a few ulp over the normal
// range; inputs below the underflow threshold flush to 0.
inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d one = _mm256_set1_pd(1.0);

    const __m256d underflow = _mm256_set1_pd(-708.0);
    const __m256d overflow_clamp = _mm256_set1_pd(709.0);
    const __m256d too_small = _mm256_cmp_pd(x, underflow, _CMP_LT_OQ);
    x = _mm256_min_pd(_mm256_max_pd(x, underflow), overflow_clamp);

    __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, c1, x);
    r = _mm256_fnmadd_pd(n, c2, r);
    const __m256d rr = _mm256_mul_pd(r, r);

    __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
    p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(3.02994407707441961300e-2));
    p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(9.99999999999999999910e-1));
    p = _mm256_mul_pd(p, r);

    __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
    q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.52448340349684104192e-3));
    q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.27265548208155028766e-1));
    q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.0));

    __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, one);

    // scale by 2^n through the exponent bits
    const __m128i n32 = _mm256_cvtpd_epi32(n);
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    n64 = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(n64));

    return _mm256_andnot_pd(too_small, e);
}

}  // namespace

void kernel_from_d2_avx2(KernelFamily family, double sigma2, double length_scale,
                         const double* d2, double* out, std::size_t n) {
    const double inv_l = 1.0 / length_scale;
    const __m256d vsigma2 = _mm256_set1_pd(sigma2);
    std::size_t i = 0;
    switch (family) {
        case KernelFamily::SquaredExponential: {
            const __m256d c = _mm256_set1_pd(-0.5 * inv_l * inv_l);
            for (; i + 4 <= n; i += 4) {
                const __m256d v = _mm256_loadu_pd(d2 + i);
                const __m256d k = _mm256_mul_pd(vsigma2, exp_pd(_mm256_mul_pd(c, v)));
                _mm256_storeu_pd(out + i, k);
            }
            break;
        }
        case KernelFamily::Matern32: {
            const __m256d c = _mm256_set1_pd(std::sqrt(3.0) * inv_l);
            const __m256d one = _mm256_set1_pd(1.0);
            for (; i + 4 <= n; i += 4) {
                const __m256d a = _mm256_mul_pd(c, _mm256_sqrt_pd(_mm256_loadu_pd(d2 + i)));
                const __m256d e = exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), a));
                const __m256d k =
                    _mm256_mul_pd(vsigma2, _mm256_mul_pd(_mm256_add_pd(one, a), e));
                _mm256_storeu_pd(out + i, k);
            }
            break;
        }
        case KernelFamily::Matern52: {
            const __m256d c = _mm256_set1_pd(std::sqrt(5.0) * inv_l);
            const __m256d one = _mm256_set1_pd(1.0);
            const __m256d third = _mm256_set1_pd(1.0 / 3.0);
            for (; i + 4 <= n; i += 4) {
                const __m256d a = _mm256_mul_pd(c, _mm256_sqrt_pd(_mm256_loadu_pd(d2 + i)));
                const __m256d poly = _mm256_add_pd(
                    _mm256_add_pd(one, a), _mm256_mul_pd(third, _mm256_mul_pd(a, a)));
                const __m256d e = exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), a));
                _mm256_storeu_pd(out + i,
                                 _mm256_mul_pd(vsigma2, _mm256_mul_pd(poly, e)));
            }
            break;
        }
    }
    if (i < n)
        kernel_from_d2_scalar(family, sigma2, length_scale, d2 + i, out + i, n - i);
}

}  // namespace krigopt::simd

#endif  // KRIGOPT_HAVE_AVX2
