#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tsvolterra/timescale.hpp"

namespace tsv {

// Real-valued function sampled on a grid.
class GridFunction {
public:
    GridFunction(const Grid& grid, std::vector<double> values);
    static GridFunction constant(const Grid& grid, double c);
    static GridFunction sample(const Grid& grid, const std::function<double(double)>& fn);

    const Grid& grid() const noexcept { return *grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    const Grid* grid_;
    std::vector<double> values_;
};

// Per-segment quadrature weights for the delta integral: composite
// trapezoid inside intervals, mu(t_j) * g(t_j) across scattered gaps.
struct QuadratureWeights {
    explicit QuadratureWeights(const Grid& grid);

    std::vector<double> left;  // weight on the left node of segment j
    std::vector<double> right; // weight on the right node of segment j

    // Nodal weights for integration from index 0 up to an arbitrary
    // upper index i: sum_{j<=i} cumulative[j]*g_j - left[i]*g_i.
    std::vector<double> cumulative;

    double total() const; // delta measure of [a, b)
};

// Integral of g over [grid[from], grid[to]).
double delta_integral(const GridFunction& g, std::size_t from, std::size_t to);
double delta_integral(const GridFunction& g, double from, double to);

// Time-scale exponential e_p(t, t0) for constant p: product of
// (1 + mu*p) over scattered grid points in [t0, t) times
// exp(p * continuous length). Throws NonRegressive when
// 1 + mu*p <= 0 at some scattered point.
double ts_exp(const Grid& grid, double p, std::size_t t_idx, std::size_t t0_idx);
double ts_exp(const Grid& grid, double p, double t, double t0);

// | int_a^t M/e_M(sigma(s),a) Ds  -  (1 - 1/e_M(t,a)) |.
// Telescopes exactly on pure discrete scales; O(h^2) on intervals.
double exp_identity_residual(const Grid& grid, double M, std::size_t t_idx,
                             std::size_t a_idx);

// e_p(t,a) - (1 + p*(t-a)); nonnegative for p > 0.
double bernoulli_gap(const Grid& grid, double p, std::size_t t_idx);

} // namespace tsv
