#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "tsvolterra/stability.hpp"
#include "tsvolterra/volterra.hpp"

namespace tsv::io {

// Problem file:
// {"timescale":{"components":[{"type":"interval","lo":0,"hi":1},
//                             {"type":"point","t":2}]},
//  "f":"1", "kernel":"5",
//  "grid":{"h_max":0.001}, "solver":{"tol":1e-10,"max_iter":100},
//  "omega":"...", "psi":"..."}   (omega/psi optional)
struct ProblemSpec {
    TimeScale timescale;
    std::string f;
    std::string kernel;
    std::optional<std::string> omega; // expression or CSV path
    std::optional<std::string> psi;   // expression or CSV path
    double h_max = 1e-3;
    SolverConfig solver;

    VolterraProblem build() const;
};

ProblemSpec parse_problem(const std::string& json_text);
ProblemSpec load_problem(const std::string& path);

TimeScale parse_timescale(const std::string& json_text);
std::string timescale_to_json(const TimeScale& ts);
TimeScale load_timescale(const std::string& path);

// CSV with header "t,value", 17 significant digits.
std::string grid_function_to_csv(const GridFunction& g);
void write_grid_function_csv(const GridFunction& g, const std::string& path);
// Rows must match the grid points within kMemberTol.
GridFunction read_grid_function_csv(const Grid& grid, const std::string& path);

// "omega"/"psi" style value: expression string unless it names an
// existing file, which is then read as a grid CSV.
GridFunction resolve_grid_input(const Grid& grid, const std::string& value);

std::string iteration_report_to_json(const IterationReport& r);
std::string certificate_to_json(const StabilityCertificate& c);
std::string certificate_margins_to_csv(const StabilityCertificate& c);
std::string growth_record_to_json(const GrowthRecord& g);

std::string format_double(double v); // 17 significant digits

} // namespace tsv::io
