#include "tsvolterra/calculus.hpp"

#include <cmath>
#include <string>

namespace tsv {

GridFunction::GridFunction(const Grid& grid, std::vector<double> values)
    : grid_(&grid), values_(std::move(values)) {
    if (values_.size() != grid.size()) {
        throw Error(ErrorCode::GridMismatch,
                    "value count " + std::to_string(values_.size()) +
                        " does not match grid size " + std::to_string(grid.size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NumericOverflow, "grid function value is not finite");
        }
    }
}

GridFunction GridFunction::constant(const Grid& grid, double c) {
    return GridFunction(grid, std::vector<double>(grid.size(), c));
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<double(double)>& fn) {
    std::vector<double> v;
    v.reserve(grid.size());
    for (double t : grid.points()) {
        v.push_back(fn(t));
    }
    return GridFunction(grid, std::move(v));
}

QuadratureWeights::QuadratureWeights(const Grid& grid) {
    std::size_t nseg = grid.segment_count();
    left.resize(nseg);
    right.resize(nseg);
    for (std::size_t j = 0; j < nseg; ++j) {
        double h = grid[j + 1] - grid[j];
        if (grid.segment_is_interval(j)) {
            left[j] = h / 2;
            right[j] = h / 2;
        } else {
            left[j] = h; // mu(t_j)
            right[j] = 0.0;
        }
    }
    cumulative.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        cumulative[j] = (j > 0 ? right[j - 1] : 0.0) + (j < nseg ? left[j] : 0.0);
    }
}

double QuadratureWeights::total() const {
    double s = 0.0;
    for (std::size_t j = 0; j < left.size(); ++j) {
        s += left[j] + right[j];
    }
    return s;
}

double delta_integral(const GridFunction& g, std::size_t from, std::size_t to) {
    const Grid& grid = g.grid();
    if (from > to || to >= grid.size()) {
        throw Error(ErrorCode::PointNotOnGrid, "integration endpoints out of range");
    }
    double s = 0.0;
    for (std::size_t j = from; j < to; ++j) {
        double h = grid[j + 1] - grid[j];
        if (grid.segment_is_interval(j)) {
            s += h / 2 * (g[j] + g[j + 1]);
        } else {
            s += h * g[j]; // mu(t_j) * g(t_j)
        }
    }
    return s;
}

double delta_integral(const GridFunction& g, double from, double to) {
    return delta_integral(g, g.grid().index_of(from), g.grid().index_of(to));
}

namespace {

[[noreturn]] void non_regressive(double t, double p) {
    throw Error(ErrorCode::NonRegressive,
                "1 + mu*p <= 0 at t = " + std::to_string(t) +
                    " (p = " + std::to_string(p) + ")");
}

} // namespace

double ts_exp(const Grid& grid, double p, std::size_t t_idx, std::size_t t0_idx) {
    if (t_idx < t0_idx || t_idx >= grid.size()) {
        throw Error(ErrorCode::PointNotOnGrid, "ts_exp endpoints out of range");
    }
    double product = 1.0;
    double length = 0.0;
    for (std::size_t j = t0_idx; j < t_idx; ++j) {
        double h = grid[j + 1] - grid[j];
        if (grid.segment_is_interval(j)) {
            length += h;
        } else {
            double factor = 1.0 + h * p;
            if (factor <= 0.0) {
                non_regressive(grid[j], p);
            }
            product *= factor;
        }
    }
    return product * std::exp(p * length);
}

double ts_exp(const Grid& grid, double p, double t, double t0) {
    return ts_exp(grid, p, grid.index_of(t), grid.index_of(t0));
}

double exp_identity_residual(const Grid& grid, double M, std::size_t t_idx,
                             std::size_t a_idx) {
    if (t_idx < a_idx || t_idx >= grid.size()) {
        throw Error(ErrorCode::PointNotOnGrid, "endpoints out of range");
    }
    // cumulative e_M(t_j, a); built stepwise so scattered factors are exact
    std::vector<double> e(t_idx - a_idx + 1);
    e[0] = 1.0;
    for (std::size_t j = a_idx; j < t_idx; ++j) {
        double h = grid[j + 1] - grid[j];
        double factor;
        if (grid.segment_is_interval(j)) {
            factor = std::exp(M * h);
        } else {
            factor = 1.0 + h * M;
            if (factor <= 0.0) {
                non_regressive(grid[j], M);
            }
        }
        e[j - a_idx + 1] = e[j - a_idx] * factor;
    }
    // integrand M / e_M(sigma(s), a); within an interval sigma(s) = s,
    // across a gap sigma jumps to the next node
    double integral = 0.0;
    for (std::size_t j = a_idx; j < t_idx; ++j) {
        double h = grid[j + 1] - grid[j];
        if (grid.segment_is_interval(j)) {
            integral += h / 2 * (M / e[j - a_idx] + M / e[j - a_idx + 1]);
        } else {
            integral += h * (M / e[j - a_idx + 1]);
        }
    }
    double rhs = 1.0 - 1.0 / e[t_idx - a_idx];
    return std::fabs(integral - rhs);
}

double bernoulli_gap(const Grid& grid, double p, std::size_t t_idx) {
    double a = grid[0];
    return ts_exp(grid, p, t_idx, 0) - (1.0 + p * (grid[t_idx] - a));
}

} // namespace tsv
