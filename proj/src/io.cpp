#include "tsvolterra/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tsv::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path);
    }
    out << content;
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw Error(ErrorCode::ParseError, "malformed JSON");
    }
    return j;
}

TimeScale timescale_from_json(const json& j) {
    if (!j.is_object() || !j.contains("components") || !j["components"].is_array()) {
        throw Error(ErrorCode::ParseError, "time scale needs a \"components\" array");
    }
    std::vector<Component> comps;
    for (const auto& c : j["components"]) {
        std::string type = c.value("type", "");
        if (type == "interval") {
            if (!c.contains("lo") || !c.contains("hi")) {
                throw Error(ErrorCode::ParseError, "interval component needs lo and hi");
            }
            comps.push_back(Component::interval(c["lo"].get<double>(), c["hi"].get<double>()));
        } else if (type == "point") {
            if (!c.contains("t")) {
                throw Error(ErrorCode::ParseError, "point component needs t");
            }
            comps.push_back(Component::point(c["t"].get<double>()));
        } else {
            throw Error(ErrorCode::ParseError,
                        "component type must be \"interval\" or \"point\"");
        }
    }
    return TimeScale(std::move(comps));
}

void append_array(std::string& out, const char* key, const std::vector<double>& v) {
    out += '"';
    out += key;
    out += "\":[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += format_double(v[i]);
    }
    out += ']';
}

} // namespace

VolterraProblem ProblemSpec::build() const {
    return VolterraProblem(timescale, h_max, Expr::parse(f), Expr::parse(kernel));
}

ProblemSpec parse_problem(const std::string& json_text) {
    json j = parse_json(json_text);
    if (!j.contains("timescale")) {
        throw Error(ErrorCode::ParseError, "problem needs a \"timescale\"");
    }
    if (!j.contains("f") || !j["f"].is_string()) {
        throw Error(ErrorCode::ParseError, "problem needs an expression string \"f\"");
    }
    if (!j.contains("kernel") || !j["kernel"].is_string()) {
        throw Error(ErrorCode::ParseError, "problem needs an expression string \"kernel\"");
    }
    ProblemSpec spec{timescale_from_json(j["timescale"]),
                     j["f"].get<std::string>(),
                     j["kernel"].get<std::string>(),
                     std::nullopt,
                     std::nullopt,
                     1e-3,
                     SolverConfig{}};
    if (j.contains("omega")) {
        spec.omega = j["omega"].get<std::string>();
    }
    if (j.contains("psi")) {
        spec.psi = j["psi"].get<std::string>();
    }
    if (j.contains("grid")) {
        spec.h_max = j["grid"].value("h_max", 1e-3);
    }
    if (j.contains("solver")) {
        spec.solver.tol = j["solver"].value("tol", 1e-10);
        if (j["solver"].contains("max_iter")) {
            spec.solver.max_iter = j["solver"]["max_iter"].get<int>();
        }
    }
    // fail fast: expressions must parse before any computation starts
    Expr::parse(spec.f);
    Expr::parse(spec.kernel);
    return spec;
}

ProblemSpec load_problem(const std::string& path) {
    return parse_problem(read_file(path));
}

TimeScale parse_timescale(const std::string& json_text) {
    return timescale_from_json(parse_json(json_text));
}

std::string timescale_to_json(const TimeScale& ts) {
    std::string out = "{\"components\":[";
    bool first = true;
    for (const auto& c : ts.components()) {
        if (!first) {
            out += ',';
        }
        first = false;
        if (c.is_point()) {
            out += "{\"type\":\"point\",\"t\":" + format_double(c.lo) + '}';
        } else {
            out += "{\"type\":\"interval\",\"lo\":" + format_double(c.lo) +
                   ",\"hi\":" + format_double(c.hi) + '}';
        }
    }
    out += "]}";
    return out;
}

TimeScale load_timescale(const std::string& path) {
    return parse_timescale(read_file(path));
}

std::string grid_function_to_csv(const GridFunction& g) {
    std::string out = "t,value\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        out += format_double(g.grid()[i]);
        out += ',';
        out += format_double(g[i]);
        out += '\n';
    }
    return out;
}

void write_grid_function_csv(const GridFunction& g, const std::string& path) {
    write_file(path, grid_function_to_csv(g));
}

GridFunction read_grid_function_csv(const Grid& grid, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,value", 0) != 0) {
        throw Error(ErrorCode::IoError, path + ": expected header \"t,value\"");
    }
    std::vector<double> values;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorCode::IoError, path + ": malformed CSV row");
        }
        double t = std::stod(line.substr(0, comma));
        double v = std::stod(line.substr(comma + 1));
        if (row >= grid.size() || std::fabs(t - grid[row]) > kMemberTol) {
            throw Error(ErrorCode::GridMismatch,
                        path + ": row " + std::to_string(row) +
                            " does not match the problem grid");
        }
        values.push_back(v);
        ++row;
    }
    if (values.size() != grid.size()) {
        throw Error(ErrorCode::GridMismatch,
                    path + ": expected " + std::to_string(grid.size()) + " rows");
    }
    return GridFunction(grid, std::move(values));
}

GridFunction resolve_grid_input(const Grid& grid, const std::string& value) {
    if (std::filesystem::exists(value)) {
        return read_grid_function_csv(grid, value);
    }
    Expr e = Expr::parse(value);
    return GridFunction::sample(grid, [&](double t) { return e.eval(t); });
}

std::string iteration_report_to_json(const IterationReport& r) {
    std::string out = "{";
    append_array(out, "sup_gaps", r.sup_gaps);
    out += ',';
    append_array(out, "bound_gaps", r.bound_gaps);
    out += ",\"converged\":";
    out += r.converged ? "true" : "false";
    out += ",\"final_gap\":" + format_double(r.final_gap) + '}';
    return out;
}

std::string certificate_to_json(const StabilityCertificate& c) {
    std::string out = "{\"mode\":\"";
    out += c.mode == CertMode::HyersUlam ? "hyers_ulam" : "rassias";
    out += '"';
    if (c.mode == CertMode::HyersUlam) {
        out += ",\"epsilon\":" + format_double(c.epsilon);
    } else {
        out += ",\"P\":" + format_double(c.P);
    }
    out += ",\"C\":" + format_double(c.C);
    out += ",\"verdict\":\"";
    out += c.verdict == Verdict::Certified ? "certified" : "violated";
    out += "\",\"worst_point\":" + format_double(c.worst_point);
    out += ",\"min_margin\":" + format_double(c.min_margin);
    if (c.mode == CertMode::Rassias) {
        out += ",\"iterate_estimate_holds\":";
        out += c.iterate_estimate_holds ? "true" : "false";
    }
    out += '}';
    return out;
}

std::string certificate_margins_to_csv(const StabilityCertificate& c) {
    std::string out = "t,deviation,bound,margin\n";
    for (std::size_t i = 0; i < c.deviations.size(); ++i) {
        double dev = c.deviations[i];
        double margin = c.margins[i];
        out += format_double(c.deviations.grid()[i]);
        out += ',';
        out += format_double(dev);
        out += ',';
        out += format_double(margin + dev);
        out += ',';
        out += format_double(margin);
        out += '\n';
    }
    return out;
}

std::string growth_record_to_json(const GrowthRecord& g) {
    std::string out = "{";
    append_array(out, "horizons", g.horizons);
    out += ',';
    append_array(out, "sup_deviation", g.sup_deviation);
    out += ',';
    append_array(out, "lower_bound", g.lower_bound);
    out += '}';
    return out;
}

} // namespace tsv::io
