// AVX2 variants of the inner-loop kernels. Complex numbers are interleaved
// [re, im]; one __m256d holds two complex values. Compiled with -mavx2 and
// only reached after the CPUID check in kernels.cpp.

#if defined(__x86_64__)

#include <immintrin.h>

#include "wavesplit/kernels.hpp"

namespace wavesplit::kernels::detail {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// (ar + i ai) * (br + i bi) for two packed complex values
inline __m256d cmul(__m256d a, __m256d b) {
    __m256d b_re = _mm256_movedup_pd(b);                    // br br
    __m256d b_im = _mm256_permute_pd(b, 0xF);               // bi bi
    __m256d a_sw = _mm256_permute_pd(a, 0x5);               // ai ar
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

}  // namespace

double sum_abs2_avx2(const cplx* a, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        __m256d x = _mm256_loadu_pd(p + 2 * j);
        acc = _mm256_fmadd_pd(x, x, acc);
    }
    double s = hsum(acc);
    for (; j < n; ++j) s += std::norm(a[j]);
    return s;
}

cplx dot_conj_avx2(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        __m256d x = _mm256_loadu_pd(pa + 2 * j);  // ar ai
        __m256d y = _mm256_loadu_pd(pb + 2 * j);  // br bi
        // re: ar*br + ai*bi ; im: ar*bi - ai*br
        acc_re = _mm256_fmadd_pd(x, y, acc_re);
        __m256d y_sw = _mm256_permute_pd(y, 0x5);  // bi br
        __m256d prod = _mm256_mul_pd(x, y_sw);     // ar*bi | ai*br
        __m256d neg = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
        acc_im = _mm256_add_pd(acc_im, _mm256_xor_pd(prod, neg));
    }
    // acc_re holds ar*br and ai*bi in alternating lanes; both sum into re.
    double re = hsum(acc_re);
    double im = hsum(acc_im);
    for (; j < n; ++j) {
        const cplx t = std::conj(a[j]) * b[j];
        re += t.real();
        im += t.imag();
    }
    return {re, im};
}

void cmul_inplace_avx2(cplx* a, const cplx* b, std::size_t n) {
    double* pa = reinterpret_cast<double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        __m256d x = _mm256_loadu_pd(pa + 2 * j);
        __m256d y = _mm256_loadu_pd(pb + 2 * j);
        _mm256_storeu_pd(pa + 2 * j, cmul(x, y));
    }
    for (; j < n; ++j) a[j] *= b[j];
}

double weighted_abs2_sum_avx2(const cplx* a, const double* w, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        __m256d x = _mm256_loadu_pd(p + 2 * j);
        __m128d wv = _mm_loadu_pd(w + j);
        // duplicate each weight across its complex pair: w0 w0 w1 w1
        __m256d wd = _mm256_permute4x64_pd(_mm256_castpd128_pd256(wv), 0x50);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(x, x), wd, acc);
    }
    double s = hsum(acc);
    for (; j < n; ++j) s += w[j] * std::norm(a[j]);
    return s;
}

void scale_inplace_avx2(cplx* a, cplx s, std::size_t n) {
    double* pa = reinterpret_cast<double*>(a);
    __m256d sv = _mm256_set_pd(s.imag(), s.real(), s.imag(), s.real());
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        __m256d x = _mm256_loadu_pd(pa + 2 * j);
        _mm256_storeu_pd(pa + 2 * j, cmul(x, sv));
    }
    for (; j < n; ++j) a[j] *= s;
}

}  // namespace wavesplit::kernels::detail

#endif  // __x86_64__
