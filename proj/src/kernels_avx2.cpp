#if defined(__x86_64__) || defined(_M_X64)

#include "tsvolterra/kernels.hpp"

#include <cmath>
#include <immintrin.h>

// Lane j accumulates indices congruent to j mod 4, the same striping
// as the scalar reference, and the tail and horizontal reduction use
// the identical operation order, so results are bit-equal.

namespace tsv::kernels::avx2 {

namespace {

__attribute__((target("avx2,fma")))
inline double reduce_tail_wkx(__m256d vacc, const double* w, const double* k,
                              const double* x, std::size_t done, std::size_t n) {
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (std::size_t i = done; i < n; ++i) {
        acc[i & 3] = std::fma(w[i] * k[i], x[i], acc[i & 3]);
    }
    return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

} // namespace

__attribute__((target("avx2,fma")))
double weighted_dot(const double* w, const double* k, const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d wk = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(k + i));
        acc = _mm256_fmadd_pd(wk, _mm256_loadu_pd(x + i), acc);
    }
    return reduce_tail_wkx(acc, w, k, x, i, n);
}

__attribute__((target("avx2,fma")))
double dot(const double* w, const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i), acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (; i < n; ++i) {
        lanes[i & 3] = std::fma(w[i], x[i], lanes[i & 3]);
    }
    return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

__attribute__((target("avx2,fma")))
double sup_abs_diff(const double* a, const double* b, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(signmask, d));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vmax);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) {
        m = std::max(m, std::fabs(a[i] - b[i]));
    }
    return m;
}

} // namespace tsv::kernels::avx2

#endif
