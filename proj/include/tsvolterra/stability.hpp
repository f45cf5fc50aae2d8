#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tsvolterra/volterra.hpp"

namespace tsv {

// Defect of psi: pointwise residual |psi - f - int_a^t k psi Ds| and
// its grid maximum.
std::pair<double, GridFunction> defect(const VolterraProblem& p, const GridFunction& psi);

// Discretization budget used to loosen continuum bounds into
// grid-level verdicts: 10x the marching residual on the same grid.
double quadrature_allowance(const VolterraProblem& p);

enum class CertMode { HyersUlam, Rassias };
enum class Verdict { Certified, Violated };

struct StabilityCertificate {
    CertMode mode;
    double epsilon = 0.0;               // HU defect (HU mode)
    std::vector<double> omega;          // HUR bound samples (HUR mode)
    double P = 0.0;                     // HUR condition constant
    double C = 0.0;                     // stability constant
    GridFunction deviations;            // |phi - psi|
    GridFunction margins;               // C*bound - deviation
    Verdict verdict = Verdict::Violated;
    double worst_point = 0.0;           // grid point with smallest margin
    double min_margin = 0.0;
    IterationReport report;
    // HUR only: per-iteration max of gap_n(t) - M*P^{n-1}*omega(t).
    std::vector<double> iterate_estimate_excess;
    bool iterate_estimate_holds = true;
};

// Solves for phi seeded at psi, sets C = 1 + e^{M(b-a)} and checks
// |phi - psi| <= C*eps at every grid point (slack = allowance).
StabilityCertificate certify_hyers_ulam(const VolterraProblem& p,
                                        const GridFunction& psi, double tol);

// P* = max over grid points t of [int_a^t omega Ds] / omega(t).
// Throws NonPositiveOmega unless omega > 0 everywhere.
double check_rassias_condition(const VolterraProblem& p, const GridFunction& omega);

// Requires pointwise residual of psi <= omega (HypothesisViolated
// otherwise) and P* < 1 (ConditionFailed). C = 1 + M/(1-P*).
StabilityCertificate certify_rassias(const VolterraProblem& p, const GridFunction& psi,
                                     const GridFunction& omega, double tol);

struct PairDifferenceResult {
    double eps1 = 0.0;
    double eps2 = 0.0;
    GridFunction slack; // (eps1+eps2)*e_M(t,a) - |psi1 - psi2|
    Verdict verdict;
};

// Gronwall bound on the difference of two approximate solutions.
PairDifferenceResult pair_difference_check(const VolterraProblem& p,
                                           const GridFunction& psi1,
                                           const GridFunction& psi2);

struct GrowthRecord {
    std::vector<double> horizons;
    std::vector<double> sup_deviation; // sup |phi - 0| on [a, T]
    std::vector<double> lower_bound;   // 1 + M*(T - a)
};

// Solves the equation on growing horizons with psi = 0 and records the
// sup deviation against the Bernoulli lower bound; unbounded growth of
// the ratio deviation/defect rules out any Hyers-Ulam constant.
GrowthRecord instability_probe(const TimeScale& ts, double h_max, const Expr& f,
                               const Expr& k, const std::vector<double>& horizons);

} // namespace tsv
