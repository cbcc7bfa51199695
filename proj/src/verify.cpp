#include "lerchfrac/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <ostream>
#include <limits>
#include <random>

#include <fmt/format.h>
#include <json.hpp>

#include "lerchfrac/complexfn.hpp"
#include "lerchfrac/differintegral.hpp"
#include "lerchfrac/errors.hpp"
#include "lerchfrac/extrapolation.hpp"

namespace lerchfrac {

namespace {

using Records = std::vector<ComparisonRecord>;
using Task = std::function<Records()>;

constexpr double kCauchyRatio = 0.6;

// std::mt19937_64 is fully specified; uniform_real_distribution is not, so
// the mapping to [0, 1) is done by hand.
class Grid {
public:
    Grid(std::uint64_t seed, std::string_view suite) : rng_(seed ^ salt(suite)) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    Complex uniform(double re_lo, double re_hi, double im_lo, double im_hi) {
        const double re = uniform(re_lo, re_hi);
        return {re, uniform(im_lo, im_hi)};
    }

private:
    static std::uint64_t salt(std::string_view s) {
        std::uint64_t h = 1469598103934665603ull;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        return h;
    }
    std::mt19937_64 rng_;
};

Records run_tasks(const std::vector<Task>& tasks) {
    std::vector<Records> parts(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) { parts[i] = tasks[i](); });
    Records out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

ComparisonRecord failed(const std::string& suite, const std::string& label, const EvaluationPoint& p,
                        const std::string& a, const std::string& b, double rel_tol, double abs_tol,
                        const std::string& why) {
    ComparisonRecord r;
    r.suite = suite;
    r.label = label;
    r.point = p;
    r.method_a = a;
    r.method_b = b;
    r.abs_residual = std::numeric_limits<double>::quiet_NaN();
    r.rel_residual = r.abs_residual;
    r.rel_tolerance = rel_tol;
    r.abs_tolerance = abs_tol;
    r.status = Status::Fail;
    r.reason = why;
    return r;
}

// One comparison; any library error turns into a failing record.
Task comparison(std::string suite, std::string label, EvaluationPoint p, std::string a, std::string b,
                double rel_tol, double abs_tol, std::function<std::pair<Complex, Complex>()> values) {
    return [=] {
        try {
            const auto [va, vb] = values();
            return Records{compare(suite, label, p, a, va, b, vb, rel_tol, abs_tol)};
        } catch (const Error& e) {
            return Records{failed(suite, label, p, a, b, rel_tol, abs_tol, e.what())};
        }
    };
}

// Fails an otherwise passing record when the extrapolants do not contract.
void require_cauchy(ComparisonRecord& r, const LimitEstimate& est) {
    const auto diffs = successive_differences(est.extrapolants);
    if (!cauchy_contracting(diffs, kCauchyRatio, est.noise_floor)) {
        r.status = Status::Fail;
        std::string list;
        for (double d : diffs) list += fmt::format(" {:.3e}", d);
        r.reason = fmt::format("extrapolant differences not contracting by {}:{}", kCauchyRatio, list);
    }
}

std::string pt(Complex v) { return format_complex(v); }

void lemmas(std::uint64_t seed, const EvalSettings& st, std::vector<Task>& tasks) {
    const std::string suite = "lemmas";
    Grid g(seed, suite);
    const QuadratureConfig& quad = st.quad;
    for (int i = 0; i < 50; ++i) {
        const Complex k = g.uniform(0.3, 3.0, -6.0, 6.0);
        const Complex alpha = g.uniform(-3.0, 1.5, -1.0, 1.0);
        const Complex t = g.uniform(-1.0, 1.0, -1.0, 1.0);
        tasks.push_back(comparison(suite, fmt::format("exp #{} k={}", i, pt(k)), {t, k, alpha}, "quadrature",
                                   "closed-form", 1e-9, 0.0, [=] {
                                       const DifferintegralSpec spec{alpha, BasePoint::MinusInfinity,
                                                                     ExponentialKernel{k}, 0.0};
                                       return std::pair{rl_numeric(spec, t, quad).value,
                                                        rl_exp_closed(k, alpha, t)};
                                   }));
    }
    for (int i = 0; i < 20; ++i) {
        const Complex beta = g.uniform(-0.45, 3.0, -1.0, 1.0);
        const Complex alpha = g.uniform(-2.5, 1.5, -1.0, 1.0);
        const Complex t = g.uniform(0.5, 3.0, -1.0, 1.0);
        tasks.push_back(comparison(suite, fmt::format("power #{} beta={}", i, pt(beta)), {t, beta, alpha},
                                   "quadrature", "closed-form", 1e-9, 0.0, [=] {
                                       const DifferintegralSpec spec{alpha, BasePoint::Zero, PowerKernel{beta}, 0.0};
                                       return std::pair{rl_numeric(spec, t, quad).value,
                                                        rl_power_closed(beta, alpha, t)};
                                   }));
    }
    tasks.push_back([suite, st] {
        const EvaluationPoint p{Complex(0.2, 0.6), Complex(0.7, -0.4), 2.5};
        InterchangeTestConfig icfg;
        icfg.disc_center = p.t;
        icfg.disc_radius = 0.1;
        Records out;
        try {
            const InterchangeResult r = interchange_check(icfg, p, st.quad);
            for (std::size_t j = 0; j < r.partial_terms.size(); ++j) {
                const int n = r.partial_terms[j];
                out.push_back(compare(suite, fmt::format("interchange N={}", n), p, "partial-sum-quadrature",
                                      r.quadrature_values[j], "termwise-closed", r.closed_values[j], 0.0,
                                      r.tolerances[j]));
                out.push_back(compare(suite, fmt::format("interchange tail N={}", n), p, "termwise-closed",
                                      r.closed_values[j], "full-kernel", r.full_value, 0.0, r.tail_bounds[j]));
            }
            for (std::size_t j = 1; j < r.ray_tail_sup.size(); ++j) {
                if (r.ray_tail_sup[j] > r.ray_tail_sup[j - 1]) {
                    out.back().status = Status::Fail;
                    out.back().reason = "ray tail supremum increased with N";
                }
            }
        } catch (const Error& e) {
            out.push_back(failed(suite, "interchange", p, "partial-sum-quadrature", "termwise-closed", 0.0, 0.0,
                                 e.what()));
        }
        return out;
    });
}

void theorem1(std::uint64_t seed, const EvalSettings& st, std::vector<Task>& tasks) {
    const std::string suite = "theorem1";
    Grid g(seed, suite);
    for (int i = 0; i < 20; ++i) {
        const EvaluationPoint p{g.uniform(-1.0, 1.0, 0.3, 1.0), g.uniform(0.2, 2.0, -1.0, -0.2),
                                g.uniform(1.2, 4.0, -1.0, 1.0)};
        tasks.push_back(comparison(suite, fmt::format("triangle #{}", i), p, "theorem1", "series", 1e-8, 1e-10, [=] {
            return std::pair{evaluate(Method::Theorem1, p, st).value, lerch_series(p, st.series_tol).value};
        }));
    }
    // Real t: the limit from above, checked against the series and for contraction.
    for (int i = 0; i < 4; ++i) {
        const EvaluationPoint p{Complex(g.uniform(0.1, 0.9), 0.0), Complex(g.uniform(0.3, 1.5), 0.0),
                                g.uniform(1.2, 4.0, -1.0, 1.0)};
        const std::string label = fmt::format("real t #{}", i);
        tasks.push_back([=] {
            try {
                const LimitEstimate r = lerch_theorem1_real_t(p.t.real(), p.x, p.s, st.limit, st.quad);
                ComparisonRecord rec = compare(suite, label, p, "theorem1-real-t", r.value, "series",
                                               lerch_series(p, st.series_tol).value, 1e-8, 1e-10);
                if (rec.status == Status::Pass) require_cauchy(rec, r);
                return Records{rec};
            } catch (const Error& e) {
                return Records{failed(suite, label, p, "theorem1-real-t", "series", 1e-8, 1e-10, e.what())};
            }
        });
    }
}

void conjugation(std::uint64_t seed, const EvalSettings& st, std::vector<Task>& tasks) {
    const std::string suite = "conjugation";
    Grid g(seed, suite);
    auto add = [&](Method m, int i, const EvaluationPoint& p, double tol) {
        const std::string name(method_name(m));
        tasks.push_back(comparison(suite, fmt::format("{} #{}", name, i), p, name, name + " reflected", tol, tol,
                                   [=] {
                                       return std::pair{std::conj(evaluate(m, p, st).value),
                                                        evaluate(m, p.conjugate_reflected(), st).value};
                                   }));
    };
    for (int i = 0; i < 30; ++i) {
        add(Method::Series, i,
            {g.uniform(-1.0, 1.0, 0.1, 1.0), g.uniform(0.2, 2.0, -1.0, 1.0), g.uniform(-2.0, 4.0, -2.0, 2.0)}, 1e-12);
    }
    for (int i = 0; i < 10; ++i) {
        add(Method::Theorem1, i,
            {g.uniform(-0.5, 0.5, 0.3, 1.0), g.uniform(0.3, 1.5, -0.8, 0.8), g.uniform(-1.0, 1.0, -1.0, 1.0)}, 1e-6);
    }
}

void functional_equation(std::uint64_t seed, const EvalSettings& st, std::vector<Task>& tasks) {
    const std::string suite = "functional-equation";
    Grid g(seed, suite);
    for (int i = 0; i < 4; ++i) {
        const double t = g.uniform(0.15, 0.85);
        const double x = g.uniform(0.15, 0.85);
        const Complex s = g.uniform(1.3, 3.0, -0.5, 0.5);
        // The recorded point is (t, x, 1-s): the theorem2 method evaluates L there.
        const EvaluationPoint p{t, x, 1.0 - s};
        tasks.push_back(comparison(suite, fmt::format("real t #{}", i), p, "theorem2", "functional-equation", 1e-5,
                                   0.0, [=] {
                                       return std::pair{evaluate(Method::Theorem2, p, st).value,
                                                        functional_equation_rhs(t, x, s, st.series_tol).value};
                                   }));
    }
}

void theorem2(const EvalSettings& st, std::vector<Task>& tasks) {
    const std::string suite = "theorem2";
    struct Case {
        double x;
        double s;
        double im_t;
    };
    constexpr std::array<Case, 6> cases{{{0.25, -0.5, 0.4},
                                         {0.4, -1.5, 0.7},
                                         {0.6, -0.5, 0.7},
                                         {0.25, -1.5, 0.7},
                                         {0.4, -0.5, 0.4},
                                         {0.6, -1.5, 0.4}}};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Case c = cases[i];
        const EvaluationPoint p{Complex(0.3, c.im_t), c.x, 1.0 - c.s};
        tasks.push_back(comparison(suite, fmt::format("order s={} #{}", c.s, i), p, "theorem2", "series", 1e-5, 0.0,
                                   [=] {
                                       return std::pair{evaluate(Method::Theorem2, p, st).value,
                                                        lerch_series(p, st.series_tol).value};
                                   }));
    }
}

void riemann(const EvalSettings& st, std::vector<Task>& tasks) {
    const std::string suite = "riemann";
    for (double s : {2.0, 3.0, 4.0}) {
        const EvaluationPoint p{0.0, 1.0, s};
        tasks.push_back(comparison(suite, fmt::format("halfpoint s={}", s), p, "riemann-halfpoint", "series", 1e-6,
                                   0.0, [=] {
                                       return std::pair{evaluate(Method::RiemannHalfpoint, p, st).value,
                                                        riemann_series(s, st.series_tol).value};
                                   }));
    }
    {
        const EvaluationPoint p{0.0, 1.0, -1.0};
        // zeta(-1) = -zeta(2) / (2 pi^2) by the reflection formula.
        tasks.push_back(comparison(suite, "halfpoint s=-1", p, "riemann-halfpoint", "reflected-series", 0.0, 1e-5,
                                   [=] {
                                       const Complex z2 = riemann_series(2.0, st.series_tol).value;
                                       return std::pair{evaluate(Method::RiemannHalfpoint, p, st).value,
                                                        -z2 / (2.0 * kPi * kPi)};
                                   }));
    }
    for (double s : {2.0, 3.0, 4.0, 1.05}) {
        const EvaluationPoint p{0.0, 1.0, s};
        const std::string label = fmt::format("limit s={}", s);
        tasks.push_back([=] {
            try {
                const LimitEstimate r = riemann_limit(s, st.limit, st.quad);
                ComparisonRecord rec = compare(suite, label, p, "riemann-limit", r.value, "series",
                                               riemann_series(s, st.series_tol).value, 1e-5, 0.0);
                if (rec.status == Status::Pass) require_cauchy(rec, r);
                return Records{rec};
            } catch (const Error& e) {
                return Records{failed(suite, label, p, "riemann-limit", "series", 1e-5, 0.0, e.what())};
            }
        });
    }
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"lemmas",   "theorem1", "conjugation", "functional-equation",
                                                "theorem2", "riemann"};
    return names;
}

int VerifyReport::count(Status s) const {
    int n = 0;
    for (const auto& r : records) n += r.status == s ? 1 : 0;
    return n;
}

VerifyReport run_verify(std::string_view suite, std::uint64_t seed, const EvalSettings& st) {
    std::vector<std::string> chosen;
    if (suite == "all") {
        chosen = suite_names();
    } else {
        for (const auto& n : suite_names()) {
            if (n == suite) chosen.push_back(n);
        }
        if (chosen.empty()) throw DomainError(fmt::format("unknown suite '{}'", suite));
    }
    std::vector<Task> tasks;
    for (const auto& n : chosen) {
        if (n == "lemmas") lemmas(seed, st, tasks);
        if (n == "theorem1") theorem1(seed, st, tasks);
        if (n == "conjugation") conjugation(seed, st, tasks);
        if (n == "functional-equation") functional_equation(seed, st, tasks);
        if (n == "theorem2") theorem2(st, tasks);
        if (n == "riemann") riemann(st, tasks);
    }
    return {std::string(suite), seed, run_tasks(tasks)};
}

void write_report(std::ostream& out, const VerifyReport& report) {
    nlohmann::ordered_json h;
    h["suite"] = report.suite;
    h["seed"] = report.seed;
    h["records"] = report.records.size();
    out << h.dump() << '\n';
    for (const auto& r : report.records) out << to_json_line(r) << '\n';
}

std::string summary_line(const VerifyReport& report) {
    return fmt::format("verify {} (seed {}): {} pass, {} fail, {} skipped", report.suite, report.seed,
                       report.count(Status::Pass), report.count(Status::Fail), report.count(Status::Skipped));
}

}  // namespace lerchfrac
