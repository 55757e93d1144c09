#include "wavesplit/kernels.hpp"

#include <atomic>

namespace wavesplit::kernels {

namespace detail {

double sum_abs2_scalar(const cplx* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::norm(a[j]);
    return s;
}

cplx dot_conj_scalar(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx t = std::conj(a[j]) * b[j];
        re += t.real();
        im += t.imag();
    }
    return {re, im};
}

void cmul_inplace_scalar(cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) a[j] *= b[j];
}

double weighted_abs2_sum_scalar(const cplx* a, const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += w[j] * std::norm(a[j]);
    return s;
}

void scale_inplace_scalar(cplx* a, cplx s, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) a[j] *= s;
}

}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<Backend> g_backend{Backend::Auto};

Backend resolved() {
    Backend b = g_backend.load(std::memory_order_relaxed);
    if (b == Backend::Auto) b = cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
    if (b == Backend::Avx2 && !cpu_has_avx2()) b = Backend::Scalar;
    return b;
}

}  // namespace

Backend active_backend() { return resolved(); }

void set_backend(Backend b) { g_backend.store(b, std::memory_order_relaxed); }

double sum_abs2(const cplx* a, std::size_t n) {
#if defined(__x86_64__)
    if (resolved() == Backend::Avx2) return detail::sum_abs2_avx2(a, n);
#endif
    return detail::sum_abs2_scalar(a, n);
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
#if defined(__x86_64__)
    if (resolved() == Backend::Avx2) return detail::dot_conj_avx2(a, b, n);
#endif
    return detail::dot_conj_scalar(a, b, n);
}

void cmul_inplace(cplx* a, const cplx* b, std::size_t n) {
#if defined(__x86_64__)
    if (resolved() == Backend::Avx2) return detail::cmul_inplace_avx2(a, b, n);
#endif
    detail::cmul_inplace_scalar(a, b, n);
}

double weighted_abs2_sum(const cplx* a, const double* w, std::size_t n) {
#if defined(__x86_64__)
    if (resolved() == Backend::Avx2) return detail::weighted_abs2_sum_avx2(a, w, n);
#endif
    return detail::weighted_abs2_sum_scalar(a, w, n);
}

void scale_inplace(cplx* a, cplx s, std::size_t n) {
#if defined(__x86_64__)
    if (resolved() == Backend::Avx2) return detail::scale_inplace_avx2(a, s, n);
#endif
    detail::scale_inplace_scalar(a, s, n);
}

}  // namespace wavesplit::kernels
