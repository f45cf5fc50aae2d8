// End-to-end checks of the command-line surface. Run as:
//   cli_tests <path-to-tsvolterra-binary>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

int failures = 0;

#define REQUIRE(cond, msg)                                                      \
    do {                                                                        \
        if (!(cond)) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg \
                      << "\n";                                                  \
            ++failures;                                                         \
        }                                                                       \
    } while (0)

std::string tool;
std::filesystem::path dir;

void write(const std::string& name, const std::string& content) {
    std::ofstream(dir / name) << content;
}

std::string slurp(const std::string& name) {
    std::ifstream in(dir / name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& args) {
    std::string cmd = tool + " " + args + " >" + (dir / "stdout.txt").string() +
                      " 2>" + (dir / "stderr.txt").string();
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string path(const std::string& name) {
    return (dir / name).string();
}

const char* kDiscreteProblem = R"({
  "timescale": {"components": [
    {"type":"point","t":0},{"type":"point","t":1},{"type":"point","t":2},
    {"type":"point","t":3},{"type":"point","t":4},{"type":"point","t":5}]},
  "f": "1", "kernel": "5",
  "grid": {"h_max": 1}, "solver": {"tol": 1e-10, "max_iter": 100}
})";

const char* kContinuumProblem = R"({
  "timescale": {"components": [{"type":"interval","lo":0,"hi":1}]},
  "f": "1", "kernel": "5",
  "grid": {"h_max": 0.001}, "solver": {"tol": 1e-10, "max_iter": 100}
})";

void test_solve_march_discrete() {
    write("discrete.json", kDiscreteProblem);
    int rc = run("solve " + path("discrete.json") + " --method march --out " + path("sol.csv"));
    REQUIRE(rc == 0, "solve march exit code " << rc);
    std::string csv = slurp("sol.csv");
    const double expected[] = {1, 6, 36, 216, 1296, 7776};
    std::istringstream rows(csv);
    std::string line;
    std::getline(rows, line);
    REQUIRE(line == "t,value", "csv header was " << line);
    for (int n = 0; n <= 5; ++n) {
        REQUIRE(std::getline(rows, line), "row " << n << " missing");
        auto comma = line.find(',');
        double t = std::stod(line.substr(0, comma));
        double v = std::stod(line.substr(comma + 1));
        REQUIRE(t == n, "t mismatch in row " << n);
        REQUIRE(std::fabs(v - expected[n]) <= 1e-9 * expected[n],
                "value " << v << " != 6^" << n);
    }
}

void test_solve_kernel_free() {
    write("kfree.json", R"({
      "timescale": {"components": [{"type":"interval","lo":0,"hi":1}]},
      "f": "1 + t^2", "kernel": "0", "grid": {"h_max": 0.25}})");
    int rc = run("solve " + path("kfree.json") + " --method march --out " + path("kfree.csv"));
    REQUIRE(rc == 0, "kernel-free solve failed");
    std::istringstream rows(slurp("kfree.csv"));
    std::string line;
    std::getline(rows, line);
    while (std::getline(rows, line)) {
        auto comma = line.find(',');
        double t = std::stod(line.substr(0, comma));
        double v = std::stod(line.substr(comma + 1));
        REQUIRE(std::fabs(v - (1 + t * t)) <= 1e-14, "f sample mismatch at t=" << t);
    }
}

void test_parse_error_exit_2() {
    write("bad.json", R"({
      "timescale": {"components": [{"type":"point","t":0}]},
      "f": "5*", "kernel": "1"})");
    int rc = run("solve " + path("bad.json") + " --out " + path("never.csv"));
    REQUIRE(rc == 2, "malformed expression should exit 2, got " << rc);
    REQUIRE(slurp("stderr.txt").find("ParseError") != std::string::npos,
            "stderr should name ParseError");
    REQUIRE(!std::filesystem::exists(dir / "never.csv"),
            "no partial output on input error");
    rc = run("solve " + path("missing.json"));
    REQUIRE(rc == 2, "missing file should exit 2, got " << rc);
}

void test_solve_picard_report() {
    write("cont.json", kContinuumProblem);
    int rc = run("solve " + path("cont.json") + " --method picard --out " + path("pic.csv") +
                 " --report " + path("report.json"));
    REQUIRE(rc == 0, "picard solve exit " << rc);
    std::string report = slurp("report.json");
    REQUIRE(report.find("\"converged\":true") != std::string::npos, "report: " << report);
    REQUIRE(report.find("\"sup_gaps\":[") != std::string::npos, "sup_gaps missing");
    REQUIRE(report.find("\"bound_gaps\":[") != std::string::npos, "bound_gaps missing");
}

void test_certify_hu() {
    write("cont.json", kContinuumProblem);
    // exact solution via march, then certify it
    run("solve " + path("cont.json") + " --method march --out " + path("phi.csv"));
    int rc = run("certify " + path("cont.json") + " --psi " + path("phi.csv") +
                 " --mode hu --out " + path("cert.json"));
    REQUIRE(rc == 0, "certify exact solution exit " << rc);
    std::string cert = slurp("cert.json");
    REQUIRE(cert.find("\"verdict\":\"certified\"") != std::string::npos, cert);
    REQUIRE(cert.find("149.413") != std::string::npos, "C should be ~149.413: " << cert);
}

void test_certify_hur_condition_failed() {
    write("hur.json", R"({
      "timescale": {"components": [{"type":"interval","lo":0,"hi":1}]},
      "f": "1", "kernel": "0.3", "grid": {"h_max": 0.001}})");
    run("solve " + path("hur.json") + " --method march --out " + path("hurphi.csv"));
    int rc = run("certify " + path("hur.json") + " --psi " + path("hurphi.csv") +
                 " --mode hur --omega 1 --out " + path("hurcert.json"));
    REQUIRE(rc == 5, "omega=1 has P*=1, expected exit 5, got " << rc);

    rc = run("certify " + path("hur.json") + " --psi " + path("hurphi.csv") +
             " --mode hur --omega \"exp(2*t)\" --out " + path("hurcert.json"));
    REQUIRE(rc == 0, "hur certify exit " << rc);
    std::string cert = slurp("hurcert.json");
    REQUIRE(cert.find("\"mode\":\"rassias\"") != std::string::npos, cert);
    REQUIRE(cert.find("\"P\":0.43") != std::string::npos, "P* ~ 0.4323: " << cert);
}

void test_instability() {
    write("inst.json", R"({
      "timescale": {"components": [
        {"type":"point","t":0},{"type":"point","t":1},{"type":"point","t":2},
        {"type":"point","t":3},{"type":"point","t":4}]},
      "f": "1", "kernel": "5", "grid": {"h_max": 1}})");
    int rc = run("instability " + path("inst.json") + " --horizons 1,2,4 --out " +
                 path("growth.json"));
    REQUIRE(rc == 0, "instability exit " << rc);
    std::string growth = slurp("growth.json");
    REQUIRE(growth.find("\"sup_deviation\":[6,36,1296]") != std::string::npos, growth);
    REQUIRE(growth.find("\"lower_bound\":[6,11,21]") != std::string::npos, growth);
}

void test_exp() {
    write("zscale.json", R"({"components":[
      {"type":"point","t":0},{"type":"point","t":1},{"type":"point","t":2},
      {"type":"point","t":3}]})");
    int rc = run("exp --timescale " + path("zscale.json") + " --p 5 --t 3 --t0 0");
    REQUIRE(rc == 0, "exp exit " << rc);
    REQUIRE(slurp("stdout.txt").rfind("216", 0) == 0, "e_5(3,0) = 216, got " << slurp("stdout.txt"));

    rc = run("exp --timescale " + path("zscale.json") + " --p 5 --t 2 --t0 2");
    REQUIRE(slurp("stdout.txt").rfind("1", 0) == 0, "e_p(t0,t0) = 1");
    REQUIRE(rc == 0, "exp t=t0 exit " << rc);

    rc = run("exp --timescale " + path("zscale.json") + " --p -1 --t 3 --t0 0");
    REQUIRE(rc == 2, "non-regressive p should exit 2, got " << rc);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <tsvolterra-binary>\n";
        return 2;
    }
    tool = argv[1];
    dir = std::filesystem::temp_directory_path() / "tsvolterra_cli_tests";
    std::filesystem::create_directories(dir);

    test_solve_march_discrete();
    test_solve_kernel_free();
    test_parse_error_exit_2();
    test_solve_picard_report();
    test_certify_hu();
    test_certify_hur_condition_failed();
    test_instability();
    test_exp();

    std::filesystem::remove_all(dir);
    if (failures) {
        std::cerr << failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
