#include "tsvolterra/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tsvolterra/kernels.hpp"

namespace tsv {

std::pair<double, GridFunction> defect(const VolterraProblem& p, const GridFunction& psi) {
    const std::size_t n = p.grid().size();
    if (psi.size() != n) {
        throw Error(ErrorCode::GridMismatch, "psi is not sampled on the problem grid");
    }
    std::vector<double> mapped(n);
    p.apply_map(psi.values(), mapped);
    std::vector<double> resid(n);
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        resid[i] = std::fabs(psi[i] - mapped[i]);
        sup = std::max(sup, resid[i]);
    }
    return {sup, GridFunction(p.grid(), std::move(resid))};
}

double quadrature_allowance(const VolterraProblem& p) {
    return 10.0 * march_solve(p).residual;
}

namespace {

struct MarginScan {
    std::vector<double> margins;
    double min_margin;
    double worst_point;
};

MarginScan scan_margins(const Grid& grid, const std::vector<double>& deviations,
                        const std::vector<double>& bounds) {
    MarginScan out;
    out.margins.resize(deviations.size());
    out.min_margin = std::numeric_limits<double>::infinity();
    out.worst_point = grid[0];
    for (std::size_t i = 0; i < deviations.size(); ++i) {
        out.margins[i] = bounds[i] - deviations[i];
        if (out.margins[i] < out.min_margin) {
            out.min_margin = out.margins[i];
            out.worst_point = grid[i];
        }
    }
    return out;
}

} // namespace

StabilityCertificate certify_hyers_ulam(const VolterraProblem& p,
                                        const GridFunction& psi, double tol) {
    auto [eps, resid] = defect(p, psi);
    SolverConfig cfg;
    cfg.tol = tol;
    auto [sol, report] = picard_solve(p, psi, cfg);

    const std::size_t n = p.grid().size();
    const double C = 1.0 + std::exp(p.kernel_bound() * (p.b() - p.a()));
    std::vector<double> dev(n), bound(n);
    for (std::size_t i = 0; i < n; ++i) {
        dev[i] = std::fabs(sol.phi[i] - psi[i]);
        bound[i] = C * eps;
    }
    auto scan = scan_margins(p.grid(), dev, bound);

    StabilityCertificate cert{
        .mode = CertMode::HyersUlam,
        .epsilon = eps,
        .omega = {},
        .P = 0.0,
        .C = C,
        .deviations = GridFunction(p.grid(), std::move(dev)),
        .margins = GridFunction(p.grid(), std::move(scan.margins)),
        .verdict = Verdict::Violated,
        .worst_point = scan.worst_point,
        .min_margin = scan.min_margin,
        .report = std::move(report),
        .iterate_estimate_excess = {},
    };
    double slack = quadrature_allowance(p);
    cert.verdict = cert.min_margin >= -slack ? Verdict::Certified : Verdict::Violated;
    return cert;
}

double check_rassias_condition(const VolterraProblem& p, const GridFunction& omega) {
    const Grid& grid = p.grid();
    if (omega.size() != grid.size()) {
        throw Error(ErrorCode::GridMismatch, "omega is not sampled on the problem grid");
    }
    for (std::size_t i = 0; i < omega.size(); ++i) {
        if (!(omega[i] > 0)) {
            throw Error(ErrorCode::NonPositiveOmega,
                        "omega must be positive (omega(" + std::to_string(grid[i]) +
                            ") = " + std::to_string(omega[i]) + ")");
        }
    }
    const auto& w = p.weights();
    double integral = 0.0;
    double pstar = 0.0; // t = a contributes 0/omega(a)
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
        integral += w.left[j] * omega[j] + w.right[j] * omega[j + 1];
        pstar = std::max(pstar, integral / omega[j + 1]);
    }
    return pstar;
}

StabilityCertificate certify_rassias(const VolterraProblem& p, const GridFunction& psi,
                                     const GridFunction& omega, double tol) {
    auto [eps, resid] = defect(p, psi);
    const std::size_t n = p.grid().size();
    for (std::size_t i = 0; i < n; ++i) {
        if (resid[i] > omega[i]) {
            throw Error(ErrorCode::HypothesisViolated,
                        "defect exceeds omega at t = " + std::to_string(p.grid()[i]));
        }
    }
    double P = check_rassias_condition(p, omega);
    // reject P* at or within rounding of 1; the constant would blow up
    if (!(P < 1.0 - 1e-12)) {
        throw Error(ErrorCode::ConditionFailed,
                    "integral condition fails: P* = " + std::to_string(P) + " >= 1");
    }
    const double M = p.kernel_bound();
    const double C = 1.0 + M / (1.0 - P);
    const double allowance = quadrature_allowance(p);

    // per-iteration check of gap_n(t) <= M P^{n-1} omega(t)
    std::vector<double> excesses;
    double pow_p = 1.0;
    auto observer = [&](int, std::span<const double> prev, std::span<const double> cur) {
        double excess = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cur.size(); ++i) {
            excess = std::max(excess, std::fabs(cur[i] - prev[i]) - M * pow_p * omega[i]);
        }
        excesses.push_back(excess);
        pow_p *= P;
    };

    SolverConfig cfg;
    cfg.tol = tol;
    auto [sol, report] = picard_solve(p, psi, cfg, observer);

    std::vector<double> dev(n), bound(n);
    for (std::size_t i = 0; i < n; ++i) {
        dev[i] = std::fabs(sol.phi[i] - psi[i]);
        bound[i] = C * omega[i];
    }
    auto scan = scan_margins(p.grid(), dev, bound);

    StabilityCertificate cert{
        .mode = CertMode::Rassias,
        .epsilon = eps,
        .omega = std::vector<double>(omega.values().begin(), omega.values().end()),
        .P = P,
        .C = C,
        .deviations = GridFunction(p.grid(), std::move(dev)),
        .margins = GridFunction(p.grid(), std::move(scan.margins)),
        .verdict = Verdict::Violated,
        .worst_point = scan.worst_point,
        .min_margin = scan.min_margin,
        .report = std::move(report),
        .iterate_estimate_excess = std::move(excesses),
    };
    cert.verdict = cert.min_margin >= -allowance ? Verdict::Certified : Verdict::Violated;
    cert.iterate_estimate_holds =
        std::all_of(cert.iterate_estimate_excess.begin(), cert.iterate_estimate_excess.end(),
                    [&](double e) { return e <= allowance; });
    return cert;
}

PairDifferenceResult pair_difference_check(const VolterraProblem& p,
                                           const GridFunction& psi1,
                                           const GridFunction& psi2) {
    auto [e1, r1] = defect(p, psi1);
    auto [e2, r2] = defect(p, psi2);
    const Grid& grid = p.grid();
    const double M = p.kernel_bound();
    const std::size_t n = grid.size();
    std::vector<double> slack(n);
    double min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double bound = (e1 + e2) * ts_exp(grid, M, i, 0);
        slack[i] = bound - std::fabs(psi1[i] - psi2[i]);
        min_slack = std::min(min_slack, slack[i]);
    }
    double allowance = quadrature_allowance(p);
    return PairDifferenceResult{
        e1, e2, GridFunction(grid, std::move(slack)),
        min_slack >= -allowance ? Verdict::Certified : Verdict::Violated};
}

GrowthRecord instability_probe(const TimeScale& ts, double h_max, const Expr& f,
                               const Expr& k, const std::vector<double>& horizons) {
    for (std::size_t i = 0; i + 1 < horizons.size(); ++i) {
        if (!(horizons[i] < horizons[i + 1])) {
            throw Error(ErrorCode::InvalidStep, "horizons must be strictly increasing");
        }
    }
    GrowthRecord rec;
    for (double T : horizons) {
        VolterraProblem p(ts.truncated(T), h_max, f, k);
        Solution sol = march_solve(p);
        double sup = 0.0;
        for (double v : sol.phi.values()) {
            sup = std::max(sup, std::fabs(v));
        }
        rec.horizons.push_back(T);
        rec.sup_deviation.push_back(sup);
        rec.lower_bound.push_back(1.0 + p.kernel_bound() * (T - p.a()));
    }
    return rec;
}

} // namespace tsv
