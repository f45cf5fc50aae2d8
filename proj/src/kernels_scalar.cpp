#include "tsvolterra/kernels.hpp"

#include <cmath>

// Four-lane striped accumulation with fma, mirroring the AVX2 lane
// layout element for element, so both variants round identically.

namespace tsv::kernels::scalar {

double weighted_dot(const double* w, const double* k, const double* x, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        acc[i & 3] = std::fma(w[i] * k[i], x[i], acc[i & 3]);
    }
    return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

double dot(const double* w, const double* x, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        acc[i & 3] = std::fma(w[i], x[i], acc[i & 3]);
    }
    return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

double sup_abs_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m = std::max(m, std::fabs(a[i] - b[i]));
    }
    return m;
}

} // namespace tsv::kernels::scalar
