#include "tsvolterra/volterra.hpp"

#include <cmath>
#include <string>

#include "tsvolterra/kernels.hpp"

namespace tsv {

namespace {

// Kernel matrices up to this many packed entries are built eagerly and
// kept (64 MB of doubles); larger problems stream rows instead.
constexpr std::size_t kEagerMatrixEntries = 8u << 20;

GridFunction sample_f(const Grid& grid, const Expr& f) {
    return GridFunction::sample(grid, [&](double t) { return f.eval(t); });
}

void check_same_grid(const Grid& a, const Grid& b) {
    if (&a == &b) {
        return;
    }
    if (a.size() != b.size()) {
        throw Error(ErrorCode::GridMismatch, "grid sizes differ");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::fabs(a[i] - b[i]) > kMemberTol) {
            throw Error(ErrorCode::GridMismatch,
                        "grids differ at index " + std::to_string(i));
        }
    }
}

} // namespace

VolterraProblem::VolterraProblem(TimeScale ts, double h_max, Expr f, Expr k)
    : ts_(std::make_shared<TimeScale>(std::move(ts))),
      grid_(std::make_shared<Grid>(*ts_, h_max)),
      weights_(*grid_),
      f_(std::move(f)),
      k_(std::move(k)),
      f_samples_(sample_f(*grid_, f_)) {
    const std::size_t n = grid_->size();
    const bool eager = n * (n + 1) / 2 <= kEagerMatrixEntries;
    if (eager) {
        kmat_.reserve(n * (n + 1) / 2);
    }
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double t = (*grid_)[i];
        for (std::size_t j = 0; j <= i; ++j) {
            double v = k_.eval(t, (*grid_)[j]);
            m = std::max(m, std::fabs(v));
            if (eager) {
                kmat_.push_back(v);
            }
        }
    }
    M_ = m;
}

void VolterraProblem::ensure_kernel_matrix() const {
    if (!kmat_.empty()) {
        return;
    }
    const std::size_t n = grid_->size();
    kmat_.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        double t = (*grid_)[i];
        for (std::size_t j = 0; j <= i; ++j) {
            kmat_.push_back(k_.eval(t, (*grid_)[j]));
        }
    }
}

void VolterraProblem::kernel_row(std::size_t i, std::span<double> out) const {
    if (!kmat_.empty()) {
        const double* row = kmat_.data() + i * (i + 1) / 2;
        for (std::size_t j = 0; j <= i; ++j) {
            out[j] = row[j];
        }
        return;
    }
    double t = (*grid_)[i];
    for (std::size_t j = 0; j <= i; ++j) {
        out[j] = k_.eval(t, (*grid_)[j]);
    }
}

void VolterraProblem::apply_map(std::span<const double> psi, std::span<double> out) const {
    ensure_kernel_matrix();
    const std::size_t n = grid_->size();
    const auto& w = weights_;
    const std::size_t nseg = grid_->segment_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double* krow = kmat_.data() + i * (i + 1) / 2;
        // int_a^{t_i}: cumulative nodal weights with the trailing
        // left-segment share at node i removed
        double s = kernels::active().weighted_dot(w.cumulative.data(), krow,
                                                  psi.data(), i + 1);
        if (i < nseg) {
            s -= w.left[i] * krow[i] * psi[i];
        }
        out[i] = f_samples_[i] + s;
    }
}

int VolterraProblem::default_max_iter() const {
    return static_cast<int>(std::ceil(M_ * (b() - a()))) + 60;
}

std::pair<Solution, IterationReport>
picard_solve(const VolterraProblem& p, const GridFunction& psi0,
             const SolverConfig& cfg, const IterationObserver& observer) {
    check_same_grid(p.grid(), psi0.grid());
    if (!(cfg.tol > 0)) {
        throw Error(ErrorCode::InvalidStep, "tolerance must be positive");
    }
    const int max_iter = cfg.max_iter.value_or(p.default_max_iter());
    const std::size_t n = p.grid().size();

    std::vector<double> prev(psi0.values().begin(), psi0.values().end());
    std::vector<double> cur(n);
    IterationReport report;
    for (int it = 1; it <= max_iter; ++it) {
        p.apply_map(prev, cur);
        double gap = kernels::active().sup_abs_diff(prev.data(), cur.data(), n);
        report.sup_gaps.push_back(gap);
        if (observer) {
            observer(it, prev, cur);
        }
        prev.swap(cur);
        if (gap <= cfg.tol) {
            report.converged = true;
            break;
        }
    }
    report.final_gap = report.sup_gaps.empty() ? 0.0 : report.sup_gaps.back();

    // contraction bound eps * M^{i-1} (b-a)^{i-1} / (i-1)! with eps = first gap
    const double eps = report.sup_gaps.empty() ? 0.0 : report.sup_gaps.front();
    double factor = eps;
    const double mba = p.kernel_bound() * (p.b() - p.a());
    for (std::size_t i = 1; i <= report.sup_gaps.size(); ++i) {
        report.bound_gaps.push_back(factor);
        factor *= mba / static_cast<double>(i);
    }

    // residual of the returned iterate = gap of one further sweep
    p.apply_map(prev, cur);
    double residual = kernels::active().sup_abs_diff(prev.data(), cur.data(), n);
    Solution sol{GridFunction(p.grid(), std::move(prev)), residual, Method::Picard};
    if (!report.converged) {
        throw NoConvergenceError(std::move(sol), std::move(report));
    }
    return {std::move(sol), std::move(report)};
}

double step_extend(const VolterraProblem& p, double phi_r, double r) {
    const TimeScale& ts = p.timescale();
    double mu = ts.mu(r);
    if (!(mu > 0)) {
        throw Error(ErrorCode::NotRightScattered,
                    "step_extend requires a right-scattered point (mu(" +
                        std::to_string(r) + ") = 0)");
    }
    double sr = ts.sigma(r);
    return p.f_expr().eval(sr) + mu * p.k_expr().eval(sr, r) * phi_r;
}

Solution march_solve(const VolterraProblem& p) {
    const Grid& grid = p.grid();
    const auto& w = p.weights();
    const std::size_t n = grid.size();
    std::vector<double> x(n);
    std::vector<double> krow(n);
    x[0] = p.f_samples()[0];
    for (std::size_t i = 1; i < n; ++i) {
        p.kernel_row(i, krow);
        double s = kernels::active().weighted_dot(w.cumulative.data(), krow.data(),
                                                  x.data(), i);
        // diagonal share: right half-weight of the incoming segment
        double d = w.right[i - 1];
        if (d != 0.0) {
            double denom = 1.0 - d * krow[i];
            if (std::fabs(denom) < 1e-12) {
                throw Error(ErrorCode::SingularDiagonal,
                            "1 - (h/2) k(t,t) vanishes at t = " +
                                std::to_string(grid[i]) + "; shrink the grid step");
            }
            x[i] = (p.f_samples()[i] + s) / denom;
        } else {
            x[i] = p.f_samples()[i] + s;
        }
    }
    std::vector<double> mapped(n);
    p.apply_map(x, mapped);
    double residual = kernels::active().sup_abs_diff(x.data(), mapped.data(), n);
    return Solution{GridFunction(grid, std::move(x)), residual, Method::Marching};
}

} // namespace tsv
