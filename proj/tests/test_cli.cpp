// End-to-end checks of the command-line driver through its public
// contract: exit codes, the commented config header, CSV shape, and
// byte-level reproducibility. The binary path comes from the build.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + std::string(HN2_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> ls;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) ls.push_back(line);
    return ls;
}

// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> csv_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

// First data row whose leading field matches, skipping comments and the
// column header.
std::vector<std::string> find_row(const std::string& text, const std::string& key) {
    for (const auto& line : lines_of(text)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = csv_fields(line);
        if (!fields.empty() && fields[0] == key) return fields;
    }
    return {};
}

std::string strip_threads_header(const std::string& text) {
    std::string out;
    for (const auto& line : lines_of(text))
        if (line.rfind("# threads:", 0) != 0) out += line + "\n";
    return out;
}

std::string write_temp_json(const std::string& name, const std::string& body) {
    const std::string path = "/tmp/" + name;
    std::ofstream out(path);
    out << body;
    REQUIRE(out.good());
    return path;
}

}   // namespace

TEST_CASE("certify on a certifiable corpus entry exits zero with an all-pass report") {
    const RunResult r = run_cli("certify --corpus ex1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("# hn2: certify\n") != std::string::npos);
    CHECK(r.out.find("# source: corpus:ex1\n") != std::string::npos);
    CHECK(r.out.find("# seed: 20240901\n") != std::string::npos);
    CHECK(r.out.find("# quad-abs-tol: 1e-09\n") != std::string::npos);

    const auto certified = find_row(r.out, "certified");
    REQUIRE(certified.size() >= 2);
    CHECK(certified[1] == "1");
    for (const char* name : {"measure_positive", "growth_finite", "orthogonality_residual",
                             "mixed_moments_vanish", "boundary_structure"}) {
        const auto row = find_row(r.out, name);
        REQUIRE(row.size() >= 2);
        CHECK(row[1] == "1");
    }
}

TEST_CASE("certify on a bare point-mass measure fails with the probe residual reported") {
    const std::string path = write_temp_json(
        "hn2_test_dirac.json",
        "{ \"components\": [ { \"type\": \"atom\", \"point\": [0, 0], "
        "\"weight\": 9.869604401089358 } ] }");
    const RunResult r = run_cli("certify --measure " + path);
    REQUIRE(r.exit_code == 1);

    // Residual at the fixed probe (2i, 2i) is a quarter of the atom weight.
    const auto probe = find_row(r.out, "residual_probe");
    REQUIRE(probe.size() >= 3);
    CHECK(probe[1] == "0");
    CHECK(std::abs(std::stod(probe[2]) - 2.4674011002723395) < 1e-9);
    CHECK(r.out.find("2.4674") != std::string::npos);

    const auto contradiction = find_row(r.out, "finite_mass_contradiction");
    REQUIRE_FALSE(contradiction.empty());
    const auto certified = find_row(r.out, "certified");
    REQUIRE(certified.size() >= 2);
    CHECK(certified[1] == "0");
}

TEST_CASE("extract recovers the ex2 coefficients within its printed error bars") {
    const RunResult r = run_cli("extract --corpus ex2");
    REQUIRE(r.exit_code == 0);

    struct Expect {
        const char* name;
        double value;
    };
    for (const Expect e : {Expect{"a", 2.0}, Expect{"b1", 1.0}, Expect{"b2", 0.0},
                           Expect{"c1", 0.0}, Expect{"c2", 0.0}}) {
        const auto row = find_row(r.out, e.name);
        REQUIRE(row.size() >= 7);
        const double value = std::stod(row[1]);
        const double error = std::stod(row[3]);
        INFO(e.name << " = " << value << " +- " << error);
        CHECK(std::abs(value - e.value) <= error + 1e-12);
        CHECK(row[4] == "1");   // converged
    }
}

TEST_CASE("eval emits one converged row per grid pair") {
    const RunResult r = run_cli("eval --corpus ex1 --grid-re -1,0,1 --grid-im 0.5,1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("# grid-points: 36\n") != std::string::npos);

    std::size_t data_rows = 0;
    for (const auto& line : lines_of(r.out)) {
        if (line.empty() || line[0] == '#' || line.rfind("re1,", 0) == 0) continue;
        const auto fields = csv_fields(line);
        REQUIRE(fields.size() == 8);
        CHECK(fields[7] == "1");
        ++data_rows;
    }
    CHECK(data_rows == 36);

    // q(i, i) = -1/i = i for the reciprocal example.
    bool found_center = false;
    for (const auto& line : lines_of(r.out)) {
        if (line.rfind("0,1,0,1,", 0) == 0) {
            const auto f = csv_fields(line);
            CHECK(std::abs(std::stod(f[4])) < 1e-9);
            CHECK(std::abs(std::stod(f[5]) - 1.0) < 1e-9);
            found_center = true;
        }
    }
    CHECK(found_center);
}

TEST_CASE("corpus run output is byte-identical across repeated invocations") {
    const RunResult a = run_cli("corpus run ex1");
    const RunResult b = run_cli("corpus run ex1");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.out == b.out);

    // The thread count shapes scheduling only, never the emitted numbers.
    const RunResult c = run_cli("corpus run ex1", "HN2_THREADS=2 ");
    REQUIRE(c.exit_code == 0);
    CHECK(strip_threads_header(a.out) == strip_threads_header(c.out));
}

TEST_CASE("corpus list names every bundled entry") {
    const RunResult r = run_cli("corpus list");
    REQUIRE(r.exit_code == 0);
    for (const char* id : {"ex1", "ex2", "ex3", "delta_counterexample", "const_real",
                           "one_var_embed"})
        CHECK_FALSE(find_row(r.out, id).empty());
}

TEST_CASE("malformed input exits with the schema error code") {
    CHECK(run_cli("certify --corpus no_such_entry").exit_code == 3);
    CHECK(run_cli("certify").exit_code == 3);
    CHECK(run_cli("no-such-command").exit_code == 3);
    CHECK(run_cli("eval --corpus ex1 --grid-im 0,-1").exit_code == 3);
    CHECK(run_cli("invert --corpus ex1 --psi canonical --psi-params 3").exit_code == 3);
    CHECK(run_cli("corpus list", "HN2_THREADS=frog ").exit_code == 3);

    const std::string bad = write_temp_json("hn2_test_bad.json", "this is not json");
    CHECK(run_cli("eval --measure " + bad).exit_code == 3);

    const std::string negative = write_temp_json(
        "hn2_test_negative.json",
        "{ \"components\": [ { \"type\": \"atom\", \"point\": [0, 0], \"weight\": -1 } ] }");
    const RunResult r = run_cli("certify --measure " + negative);
    CHECK(r.exit_code == 1);   // loads fine, fails the positivity check
}

TEST_CASE("an unstable extrapolation exits with the non-convergence code") {
    const RunResult r = run_cli("invert --corpus ex1 --k-max 3 --inv-tol 1e-14");
    REQUIRE(r.exit_code == 2);
    const auto row = find_row(r.out, "canonical");
    REQUIRE(row.size() >= 4);
    CHECK(row[3] == "0");   // converged flag
}

TEST_CASE("inversion of the reciprocal example recovers the canonical pairing") {
    const RunResult r = run_cli("invert --corpus ex1");
    REQUIRE(r.exit_code == 0);
    const auto row = find_row(r.out, "canonical");
    REQUIRE(row.size() >= 6);
    const double value = std::stod(row[1]);
    CHECK(std::abs(value - 9.869604401089358) < 0.01 * 9.869604401089358);
}

TEST_CASE("help is not an error") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("certify --help").exit_code == 0);
}
