#pragma once

#include <cstddef>
#include <span>

// Data-parallel inner loops shared by the solvers and the defect
// evaluator. Scalar reference versions always exist; an AVX2/FMA
// variant is selected at runtime when the CPU supports it. Both
// variants accumulate in four independent lanes so scalar and SIMD
// produce bit-identical sums.

namespace tsv::kernels {

struct Ops {
    // sum_i w[i] * k[i] * x[i]
    double (*weighted_dot)(const double* w, const double* k, const double* x,
                           std::size_t n);
    // sum_i w[i] * x[i]
    double (*dot)(const double* w, const double* x, std::size_t n);
    // max_i |a[i] - b[i]|
    double (*sup_abs_diff)(const double* a, const double* b, std::size_t n);
    const char* name;
};

namespace scalar {
double weighted_dot(const double* w, const double* k, const double* x, std::size_t n);
double dot(const double* w, const double* x, std::size_t n);
double sup_abs_diff(const double* a, const double* b, std::size_t n);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double weighted_dot(const double* w, const double* k, const double* x, std::size_t n);
double dot(const double* w, const double* x, std::size_t n);
double sup_abs_diff(const double* a, const double* b, std::size_t n);
} // namespace avx2
#endif

// Best variant for the running CPU, chosen once.
const Ops& active();
const Ops& scalar_ops();
bool avx2_available();

inline double weighted_dot(std::span<const double> w, std::span<const double> k,
                           std::span<const double> x) {
    return active().weighted_dot(w.data(), k.data(), x.data(), w.size());
}

inline double dot(std::span<const double> w, std::span<const double> x) {
    return active().dot(w.data(), x.data(), w.size());
}

inline double sup_abs_diff(std::span<const double> a, std::span<const double> b) {
    return active().sup_abs_diff(a.data(), b.data(), a.size());
}

} // namespace tsv::kernels
