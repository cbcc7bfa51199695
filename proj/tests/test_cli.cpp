#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "lerchfrac/harness.hpp"
#include "oracle.hpp"

namespace {

struct Run {
    int code;
    std::string out;
};

// Runs the tool with stderr folded into the captured output.
Run run(const std::string& args) {
    const std::string cmd = std::string(LERCHFRAC_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "lerchfrac_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("eval prints the value and an error estimate") {
    const Run r = run("eval --method series --t 0 --x 1 --s 2");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("1.64493406684823+0.00000000000000i\n", 0) == 0);
    CHECK(r.out.find("error estimate") != std::string::npos);
}

TEST_CASE("eval theorem1 matches the series") {
    const Run a = run("eval --method theorem1 --t 0.2+0.6i --x 0.7-0.4i --s 2.5");
    const Run b = run("eval --method series --t 0.2+0.6i --x 0.7-0.4i --s 2.5");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    const auto first = [](const std::string& s) { return lerchfrac::parse_complex(s.substr(0, s.find('\n'))); };
    CHECK(oracle::rel(first(a.out), first(b.out)) <= 1e-8);
}

TEST_CASE("exit codes") {
    const Run gate = run("eval --method riemann-limit --s 1");
    CHECK(gate.code == 2);
    CHECK(gate.out.find("Re(s)>1") != std::string::npos);
    CHECK(run("eval --method series --t 0 --x 1 --s 2+").code == 2);
    CHECK(run("eval --method nope --s 2").code == 2);
    CHECK(run("eval --method theorem1 --t 0.3 --x 1 --s 2").code == 2);
    CHECK(run("eval --s 2 --unknown-flag").code == 2);
    // A subdivision budget of one cannot reach the tolerance.
    CHECK(run("eval --method theorem1 --t 0.2+0.6i --x 0.7-0.4i --s 2.5 --max-subdivisions 1 --rel-tol 1e-15 --abs-tol 1e-300").code ==
          3);
}

TEST_CASE("tolerance from the environment") {
    CHECK(run("eval --s 2").code == 0);
    const Run bad = run("eval --s 2 --rel-tol -1");
    CHECK(bad.code == 2);
    const std::string cmd = std::string("LERCHFRAC_REL_TOL=abc ") + LERCHFRAC_CLI + " eval --s 2 >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("verify writes a report and counts") {
    const auto out = scratch("conj.jsonl");
    const Run r = run("verify --suite conjugation --grid-seed 3 --output " + out.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("40 pass, 0 fail") != std::string::npos);
    const std::string report = slurp(out);
    CHECK(report.rfind("{\"suite\":\"conjugation\",\"seed\":3", 0) == 0);
    CHECK(std::count(report.begin(), report.end(), '\n') == 41);
    CHECK(run("verify --suite bogus").code == 2);
}

TEST_CASE("table writes csv and json-lines") {
    const auto spec = scratch("spec.json");
    std::ofstream(spec) << R"({"t": "0.2+0.6i", "x": "0.7-0.4i", "s": {"start": 1.5, "stop": 3.5, "count": 5},
                              "methods": ["series", "theorem1"]})";
    const auto csv = scratch("t.csv");
    const auto jl = scratch("t.jsonl");
    CHECK(run("table --spec " + spec.string() + " --output " + csv.string()).code == 0);
    CHECK(run("table --spec " + spec.string() + " --format json-lines --output " + jl.string()).code == 0);
    const std::string c = slurp(csv);
    CHECK(c.rfind(std::string(lerchfrac::kCsvHeader) + "\n", 0) == 0);
    CHECK(std::count(c.begin(), c.end(), '\n') == 11);
    const std::string j = slurp(jl);
    CHECK(std::count(j.begin(), j.end(), '\n') == 10);

    const auto empty = scratch("empty.json");
    std::ofstream(empty) << R"({"t": 0.3, "x": -2, "s": 0.5, "methods": ["series", "hurwitz"]})";
    const auto e_out = scratch("e.csv");
    CHECK(run("table --spec " + empty.string() + " --output " + e_out.string()).code == 0);
    const std::string e = slurp(e_out);
    CHECK(std::count(e.begin(), e.end(), '\n') == 3);
    CHECK(run("table --spec " + spec.string() + " --format xml").code == 2);
    CHECK(run("table --spec /nonexistent/spec.json").code == 2);
}
