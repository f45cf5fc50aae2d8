#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsvolterra/io.hpp"
#include "tsvolterra/stability.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitViolated = 4;
constexpr int kExitHypothesis = 5;

int exit_code_for(const tsv::Error& e) {
    switch (e.code()) {
        case tsv::ErrorCode::NoConvergence:
        case tsv::ErrorCode::SingularDiagonal:
            return kExitSolver;
        case tsv::ErrorCode::HypothesisViolated:
        case tsv::ErrorCode::ConditionFailed:
            return kExitHypothesis;
        default:
            return kExitInput;
    }
}

void write_text(const std::string& path, const std::string& content) {
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) {
        throw tsv::Error(tsv::ErrorCode::IoError, "cannot write " + path);
    }
    std::fwrite(content.data(), 1, content.size(), f);
    std::fclose(f);
}

struct SolveArgs {
    std::string problem;
    std::string method = "march";
    std::string out;
    std::string report;
};

int run_solve(const SolveArgs& args) {
    tsv::io::ProblemSpec spec = tsv::io::load_problem(args.problem);
    tsv::VolterraProblem p = spec.build();

    if (args.method == "march") {
        tsv::Solution sol = tsv::march_solve(p);
        if (!args.out.empty()) {
            write_text(args.out, tsv::io::grid_function_to_csv(sol.phi));
        }
        return kExitOk;
    }

    // picard: seed with the problem's psi when given, zero otherwise
    tsv::GridFunction psi0 = spec.psi
                                 ? tsv::io::resolve_grid_input(p.grid(), *spec.psi)
                                 : tsv::GridFunction::constant(p.grid(), 0.0);
    try {
        auto [sol, report] = tsv::picard_solve(p, psi0, spec.solver);
        if (!args.out.empty()) {
            write_text(args.out, tsv::io::grid_function_to_csv(sol.phi));
        }
        if (!args.report.empty()) {
            write_text(args.report, tsv::io::iteration_report_to_json(report));
        }
        return kExitOk;
    } catch (const tsv::NoConvergenceError& e) {
        if (!args.report.empty()) {
            write_text(args.report, tsv::io::iteration_report_to_json(e.report));
        }
        throw;
    }
}

struct CertifyArgs {
    std::string problem;
    std::string psi;
    std::string mode = "hu";
    std::string omega;
    std::string out;
    std::string margins;
};

int run_certify(const CertifyArgs& args) {
    tsv::io::ProblemSpec spec = tsv::io::load_problem(args.problem);
    tsv::VolterraProblem p = spec.build();

    std::string psi_src = !args.psi.empty() ? args.psi : spec.psi.value_or("");
    if (psi_src.empty()) {
        throw tsv::Error(tsv::ErrorCode::ParseError,
                         "certify needs --psi or a \"psi\" entry in the problem");
    }
    tsv::GridFunction psi = tsv::io::resolve_grid_input(p.grid(), psi_src);

    tsv::StabilityCertificate cert = [&] {
        if (args.mode == "hu") {
            return tsv::certify_hyers_ulam(p, psi, spec.solver.tol);
        }
        std::string omega_src = !args.omega.empty() ? args.omega : spec.omega.value_or("");
        if (omega_src.empty()) {
            throw tsv::Error(tsv::ErrorCode::ParseError,
                             "hur mode needs --omega or an \"omega\" entry");
        }
        tsv::GridFunction omega = tsv::io::resolve_grid_input(p.grid(), omega_src);
        return tsv::certify_rassias(p, psi, omega, spec.solver.tol);
    }();

    if (!args.out.empty()) {
        write_text(args.out, tsv::io::certificate_to_json(cert));
    }
    if (!args.margins.empty()) {
        write_text(args.margins, tsv::io::certificate_margins_to_csv(cert));
    }
    return cert.verdict == tsv::Verdict::Certified ? kExitOk : kExitViolated;
}

struct InstabilityArgs {
    std::string problem;
    std::vector<double> horizons;
    std::string out;
};

int run_instability(const InstabilityArgs& args) {
    tsv::io::ProblemSpec spec = tsv::io::load_problem(args.problem);
    tsv::GrowthRecord rec =
        tsv::instability_probe(spec.timescale, spec.h_max, tsv::Expr::parse(spec.f),
                               tsv::Expr::parse(spec.kernel), args.horizons);
    if (!args.out.empty()) {
        write_text(args.out, tsv::io::growth_record_to_json(rec));
    }
    for (std::size_t i = 0; i < rec.horizons.size(); ++i) {
        if (rec.sup_deviation[i] < rec.lower_bound[i]) {
            return kExitViolated;
        }
    }
    return kExitOk;
}

struct ExpArgs {
    std::string timescale;
    double p = 0.0;
    double t = 0.0;
    double t0 = 0.0;
    bool t0_set = false;
    double h_max = 1e-3;
};

int run_exp(const ExpArgs& args) {
    tsv::TimeScale ts = tsv::io::load_timescale(args.timescale);
    tsv::Grid grid(ts, args.h_max);
    double t0 = args.t0_set ? args.t0 : ts.min();
    double v = tsv::ts_exp(grid, args.p, args.t, t0);
    std::cout << tsv::io::format_double(v) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Volterra integral equations on time scales: solvers and "
                 "Hyers-Ulam stability certificates"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Solve the problem and write the solution CSV");
    solve->add_option("problem", solve_args.problem, "problem JSON file")->required();
    solve->add_option("--method", solve_args.method, "picard|march")
        ->check(CLI::IsMember({"picard", "march"}));
    solve->add_option("--out", solve_args.out, "solution CSV path");
    solve->add_option("--report", solve_args.report, "iteration report JSON (picard)");

    CertifyArgs certify_args;
    auto* certify = app.add_subcommand("certify", "Certify an approximate solution");
    certify->add_option("problem", certify_args.problem, "problem JSON file")->required();
    certify->add_option("--psi", certify_args.psi, "approximate solution (CSV path or expression)");
    certify->add_option("--mode", certify_args.mode, "hu|hur")
        ->check(CLI::IsMember({"hu", "hur"}));
    certify->add_option("--omega", certify_args.omega, "HUR bound (CSV path or expression)");
    certify->add_option("--out", certify_args.out, "certificate JSON path");
    certify->add_option("--margins", certify_args.margins, "per-point margins CSV path");

    InstabilityArgs inst_args;
    auto* inst = app.add_subcommand("instability", "Growing-horizon instability probe");
    inst->add_option("problem", inst_args.problem, "problem JSON file")->required();
    inst->add_option("--horizons", inst_args.horizons, "increasing horizon list")
        ->required()
        ->delimiter(',');
    inst->add_option("--out", inst_args.out, "growth record JSON path");

    ExpArgs exp_args;
    auto* exp = app.add_subcommand("exp", "Evaluate the time-scale exponential e_p(t,t0)");
    exp->add_option("--timescale", exp_args.timescale, "time scale JSON file")->required();
    exp->add_option("--p", exp_args.p, "constant coefficient")->required();
    exp->add_option("--t", exp_args.t, "upper point")->required();
    auto* t0opt = exp->add_option("--t0", exp_args.t0, "base point (default: min)");
    exp->add_option("--h-max", exp_args.h_max, "interval discretization step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    exp_args.t0_set = t0opt->count() > 0;

    try {
        if (solve->parsed()) {
            return run_solve(solve_args);
        }
        if (certify->parsed()) {
            return run_certify(certify_args);
        }
        if (inst->parsed()) {
            return run_instability(inst_args);
        }
        return run_exp(exp_args);
    } catch (const tsv::Error& e) {
        std::cerr << tsv::error_code_name(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
