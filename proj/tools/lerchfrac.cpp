// lerchfrac eval | verify | table

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lerchfrac/errors.hpp"
#include "lerchfrac/harness.hpp"
#include "lerchfrac/verify.hpp"

using namespace lerchfrac;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitDomain = 2;
constexpr int kExitConvergence = 3;

struct Tolerances {
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    std::optional<int> max_subdivisions;
    std::optional<double> eps0;
    std::optional<int> levels;

    void add_to(CLI::App* app) {
        app->add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
        app->add_option("--abs-tol", abs_tol, "quadrature absolute tolerance");
        app->add_option("--max-subdivisions", max_subdivisions, "panel bisection budget");
        app->add_option("--eps0", eps0, "first contour offset for limits");
        app->add_option("--levels", levels, "number of offsets for limits");
    }

    void apply(EvalSettings& st) const {
        if (rel_tol) st.quad.rel_tol = *rel_tol;
        if (abs_tol) st.quad.abs_tol = *abs_tol;
        if (max_subdivisions) st.quad.max_subdivisions = *max_subdivisions;
        if (eps0) st.limit.eps0 = *eps0;
        if (levels) st.limit.levels = *levels;
        st.quad.validate();
        st.limit.validate();
    }
};

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError(fmt::format("cannot open '{}' for writing", path));
    return f;
}

int cmd_eval(const std::string& method, const std::string& t, const std::string& x, const std::string& s,
             const Tolerances& tol) {
    const auto m = parse_method(method);
    if (!m) throw DomainError(fmt::format("unknown method '{}'", method));
    EvalSettings st = EvalSettings::from_environment();
    tol.apply(st);
    const EvaluationPoint p{parse_complex(t), parse_complex(x), parse_complex(s)};
    const Estimate e = evaluate(*m, p, st);
    std::cout << format_complex(e.value) << '\n' << fmt::format("error estimate {:.3e}", e.error) << '\n';
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& output, const Tolerances& tol) {
    EvalSettings st = EvalSettings::from_environment();
    tol.apply(st);
    const VerifyReport report = run_verify(suite, seed, st);
    if (output.empty()) {
        write_report(std::cout, report);
        std::cerr << summary_line(report) << '\n';
    } else {
        std::ofstream f = open_output(output);
        write_report(f, report);
        std::cout << summary_line(report) << '\n';
    }
    for (const auto& r : report.records) {
        if (r.status != Status::Pass) {
            std::cerr << fmt::format("{} [{}] {}: rel {:.3e} abs {:.3e} {}", status_name(r.status), r.suite, r.label,
                                     r.rel_residual, r.abs_residual, r.reason)
                      << '\n';
        }
    }
    return report.all_pass() ? 0 : kExitFail;
}

int cmd_table(const std::string& spec_path, const std::string& output, const std::string& format,
              const Tolerances& tol) {
    TableFormat fmt_kind;
    if (format == "csv") {
        fmt_kind = TableFormat::Csv;
    } else if (format == "json-lines") {
        fmt_kind = TableFormat::JsonLines;
    } else {
        throw DomainError(fmt::format("unknown format '{}' (csv or json-lines)", format));
    }
    std::ifstream in(spec_path, std::ios::binary);
    if (!in) throw DomainError(fmt::format("cannot read sweep spec '{}'", spec_path));
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const SweepSpec spec = SweepSpec::from_json(text);
    EvalSettings st = EvalSettings::from_environment();
    if (spec.rel_tol) st.quad.rel_tol = *spec.rel_tol;
    tol.apply(st);
    const auto rows = run_sweep(spec, st);
    int bad = 0;
    for (const auto& r : rows) bad += r.ok ? 0 : 1;
    if (output.empty()) {
        write_table(std::cout, rows, fmt_kind);
    } else {
        std::ofstream f = open_output(output);
        write_table(f, rows, fmt_kind);
    }
    std::cerr << fmt::format("{} rows, {} skipped", rows.size(), bad) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lerch function via fractional differintegrals"};
    app.require_subcommand(1);

    Tolerances tol;

    std::string method = "series";
    std::string t = "0";
    std::string x = "1";
    std::string s;
    auto* eval = app.add_subcommand("eval", "evaluate one point");
    eval->add_option("--method", method, "series, theorem1, theorem1-real-t, theorem2, riemann-halfpoint, "
                                         "riemann-limit or hurwitz");
    eval->add_option("--t", t, "complex literal such as 0.2+0.6i");
    eval->add_option("--x", x);
    eval->add_option("--s", s)->required();
    tol.add_to(eval);

    std::string suite = "all";
    std::uint64_t seed = 7;
    std::string output;
    auto* verify = app.add_subcommand("verify", "run identity suites and write a json-lines report");
    verify->add_option("--suite", suite, "lemmas, theorem1, conjugation, functional-equation, theorem2, riemann, all");
    verify->add_option("--grid-seed", seed);
    verify->add_option("--output", output, "report path (stdout when absent)");
    tol.add_to(verify);

    std::string spec_path;
    std::string format = "csv";
    auto* table = app.add_subcommand("table", "sweep a grid of points");
    table->add_option("--spec", spec_path, "JSON sweep spec")->required();
    table->add_option("--output", output, "table path (stdout when absent)");
    table->add_option("--format", format, "csv or json-lines");
    tol.add_to(table);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitDomain;
    }

    try {
        if (eval->parsed()) return cmd_eval(method, t, x, s, tol);
        if (verify->parsed()) return cmd_verify(suite, seed, output, tol);
        return cmd_table(spec_path, output, format, tol);
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConvergence;
    }
}
