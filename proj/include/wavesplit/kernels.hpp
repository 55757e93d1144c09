#ifndef WAVESPLIT_KERNELS_HPP
#define WAVESPLIT_KERNELS_HPP

// Data-parallel inner loops shared by the wavefunction algebra and the
// propagators. Each kernel has a scalar reference implementation and an
// AVX2 variant; the active backend is picked once at startup from CPUID
// and can be forced for equivalence testing.

#include <complex>
#include <cstddef>

namespace wavesplit::kernels {

using cplx = std::complex<double>;

enum class Backend { Auto, Scalar, Avx2 };

// Returns the backend actually in use after dispatch.
Backend active_backend();

// Force a backend (Scalar/Avx2) or restore CPUID dispatch (Auto).
// Avx2 on a machine without AVX2 falls back to Scalar.
void set_backend(Backend b);

// sum_j |a_j|^2
double sum_abs2(const cplx* a, std::size_t n);

// sum_j conj(a_j) * b_j
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);

// a_j *= b_j  (complex pointwise multiply)
void cmul_inplace(cplx* a, const cplx* b, std::size_t n);

// sum_j w_j |a_j|^2  (real weights; expectation values, half-space masses)
double weighted_abs2_sum(const cplx* a, const double* w, std::size_t n);

// a_j *= s
void scale_inplace(cplx* a, cplx s, std::size_t n);

namespace detail {
double sum_abs2_scalar(const cplx*, std::size_t);
cplx dot_conj_scalar(const cplx*, const cplx*, std::size_t);
void cmul_inplace_scalar(cplx*, const cplx*, std::size_t);
double weighted_abs2_sum_scalar(const cplx*, const double*, std::size_t);
void scale_inplace_scalar(cplx*, cplx, std::size_t);
#if defined(__x86_64__)
double sum_abs2_avx2(const cplx*, std::size_t);
cplx dot_conj_avx2(const cplx*, const cplx*, std::size_t);
void cmul_inplace_avx2(cplx*, const cplx*, std::size_t);
double weighted_abs2_sum_avx2(const cplx*, const double*, std::size_t);
void scale_inplace_avx2(cplx*, cplx, std::size_t);
#endif
}  // namespace detail

}  // namespace wavesplit::kernels

#endif
