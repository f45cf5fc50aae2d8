#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "tsvolterra/calculus.hpp"
#include "tsvolterra/expr.hpp"
#include "tsvolterra/timescale.hpp"

namespace tsv {

struct SolverConfig {
    double tol = 1e-10;
    // Default max_iter: ceil(M*(b-a)) + 60, set when the problem is known.
    std::optional<int> max_iter;
};

// x(t) = f(t) + int_a^t k(t,s) x(s) Ds on a bounded time scale.
class VolterraProblem {
public:
    VolterraProblem(TimeScale ts, double h_max, Expr f, Expr k);

    const TimeScale& timescale() const noexcept { return *ts_; }
    const Grid& grid() const noexcept { return *grid_; }
    const QuadratureWeights& weights() const noexcept { return weights_; }
    const Expr& f_expr() const noexcept { return f_; }
    const Expr& k_expr() const noexcept { return k_; }
    const GridFunction& f_samples() const noexcept { return f_samples_; }

    double a() const noexcept { return grid_->points().front(); }
    double b() const noexcept { return grid_->points().back(); }

    // Grid maximum of |k(t_i, t_j)| over pairs t_j <= t_i.
    double kernel_bound() const noexcept { return M_; }

    // k(t_i, t_j) for j = 0..i into out (out.size() >= i+1).
    void kernel_row(std::size_t i, std::span<double> out) const;

    // One sweep of the successive-approximation map
    // (A psi)(t_i) = f(t_i) + int_a^{t_i} k(t_i,s) psi(s) Ds.
    void apply_map(std::span<const double> psi, std::span<double> out) const;

    int default_max_iter() const;

private:
    void ensure_kernel_matrix() const;

    std::shared_ptr<const TimeScale> ts_;
    std::shared_ptr<const Grid> grid_;
    QuadratureWeights weights_;
    Expr f_;
    Expr k_;
    GridFunction f_samples_;
    double M_ = 0.0;
    // Packed lower-triangular kernel values, built on first sweep.
    mutable std::vector<double> kmat_;
};

enum class Method { Picard, Marching };

struct Solution {
    GridFunction phi;
    double residual; // defect of phi on the same grid
    Method method;
};

struct IterationReport {
    std::vector<double> sup_gaps;   // ||psi_i - psi_{i-1}||_inf
    std::vector<double> bound_gaps; // eps * M^{i-1} (b-a)^{i-1} / (i-1)!
    bool converged = false;
    double final_gap = 0.0;
};

// Carries the last iterate and the full report so callers can still
// inspect how far the iteration got.
class NoConvergenceError : public Error {
public:
    NoConvergenceError(Solution solution, IterationReport report)
        : Error(ErrorCode::NoConvergence,
                "successive approximation did not converge"),
          solution(std::move(solution)), report(std::move(report)) {}

    Solution solution;
    IterationReport report;
};

// Called after each sweep with (iteration index n >= 1, previous
// iterate, new iterate).
using IterationObserver =
    std::function<void(int, std::span<const double>, std::span<const double>)>;

// Successive approximation seeded at psi0; stops when the sup gap
// drops below cfg.tol. Throws NoConvergence (with the report attached
// to the exception message) when max_iter is exhausted.
std::pair<Solution, IterationReport>
picard_solve(const VolterraProblem& p, const GridFunction& psi0,
             const SolverConfig& cfg = {}, const IterationObserver& observer = {});

// One scattered step of the restarted equation on [r, sigma(r)]:
// f(sigma(r)) + mu(r) * k(sigma(r), r) * phi_r.
double step_extend(const VolterraProblem& p, double phi_r, double r);

// Direct forward marching through the quadrature system; exact (up to
// rounding) on pure discrete scales. Throws SingularDiagonal when
// |1 - (h/2) k(t_i,t_i)| < 1e-12 at some interval node.
Solution march_solve(const VolterraProblem& p);

} // namespace tsv
