#include "lerchfrac/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "lerchfrac/complexfn.hpp"
#include "lerchfrac/errors.hpp"

namespace lerchfrac {

namespace {

// ordered_json keeps keys in insertion order, matching the CSV columns.
using json = nlohmann::ordered_json;

struct MethodEntry {
    Method method;
    std::string_view name;
};

constexpr MethodEntry kMethods[] = {
    {Method::Series, "series"},
    {Method::Theorem1, "theorem1"},
    {Method::Theorem1RealT, "theorem1-real-t"},
    {Method::Theorem2, "theorem2"},
    {Method::RiemannHalfpoint, "riemann-halfpoint"},
    {Method::RiemannLimit, "riemann-limit"},
    {Method::Hurwitz, "hurwitz"},
};

bool is_integer(double v) { return v == std::round(v); }

double parse_double(std::string_view text, std::string_view whole) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
        throw DomainError(fmt::format("cannot parse complex literal '{}'", whole));
    }
    return v;
}

double imag_coefficient(std::string_view text, std::string_view whole) {
    if (text.empty() || text == "+") return 1.0;
    if (text == "-") return -1.0;
    return parse_double(text, whole);
}

Complex json_complex(const json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_string()) return parse_complex(j.get<std::string>());
    throw DomainError(fmt::format("sweep field '{}' must be a number or a complex literal", what));
}

AxisSpec json_axis(const json& root, const char* name) {
    if (!root.contains(name)) throw DomainError(fmt::format("sweep spec is missing axis '{}'", name));
    const json& a = root.at(name);
    AxisSpec axis;
    if (!a.is_object()) {
        axis.start = axis.stop = json_complex(a, name);
        return axis;
    }
    if (!a.contains("start")) throw DomainError(fmt::format("axis '{}' needs a start", name));
    axis.start = json_complex(a.at("start"), name);
    axis.stop = a.contains("stop") ? json_complex(a.at("stop"), name) : axis.start;
    axis.count = a.value("count", 1);
    if (axis.count < 1) throw DomainError(fmt::format("axis '{}' needs count >= 1", name));
    return axis;
}

json complex_json(Complex v) { return json::array({v.real(), v.imag()}); }

// Shortest round-trip text; identical for the CSV and JSON writers.
std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return json(v).dump();
}

}  // namespace

std::string_view method_name(Method m) noexcept {
    for (const auto& e : kMethods) {
        if (e.method == m) return e.name;
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
    for (const auto& e : kMethods) {
        if (e.name == name) return e.method;
    }
    return std::nullopt;
}

const std::vector<Method>& all_methods() {
    static const std::vector<Method> v = [] {
        std::vector<Method> out;
        for (const auto& e : kMethods) out.push_back(e.method);
        return out;
    }();
    return v;
}

EvalSettings EvalSettings::from_environment() {
    EvalSettings st;
    if (const char* env = std::getenv(kRelTolEnv); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0.0)) {
            throw DomainError(fmt::format("{} must be a positive number, got '{}'", kRelTolEnv, env));
        }
        st.quad.rel_tol = v;
    }
    return st;
}

std::string domain_violation(Method m, const EvaluationPoint& p) {
    const bool x_on_cut = p.x.imag() == 0.0 && p.x.real() <= 0.0;
    switch (m) {
    case Method::Series:
        if (!p.series_domain()) return "series needs Re(x) > 0 and either Im(t) > 0, or Im(t) >= 0 with Re(s) > 1";
        return {};
    case Method::Theorem1:
        if (!(p.t.imag() > 0.0)) return "theorem1 needs Im(t) > 0";
        if (x_on_cut) return "theorem1 needs x off (-inf, 0]";
        if (!(p.s.real() > -static_cast<double>(kMaxDerivativeOrder))) return "theorem1 needs Re(s) > -8";
        return {};
    case Method::Theorem1RealT:
        if (p.t.imag() != 0.0) return "theorem1-real-t needs real t";
        if (is_integer(p.t.real())) return "theorem1-real-t needs t off the integers";
        if (x_on_cut) return "theorem1-real-t needs x off (-inf, 0]";
        if (!(p.s.real() > -static_cast<double>(kMaxDerivativeOrder))) return "theorem1-real-t needs Re(s) > -8";
        return {};
    case Method::Theorem2: {
        if (p.x.imag() != 0.0 || !(p.x.real() > 0.0 && p.x.real() < 1.0)) return "theorem2 needs real x in (0, 1)";
        if (p.t.imag() < 0.0) return "theorem2 needs Im(t) >= 0";
        if (p.t.imag() == 0.0 && !(p.t.real() > 0.0 && p.t.real() < 1.0)) return "theorem2 at real t needs 0 < t < 1";
        const Complex order = 1.0 - p.s;
        if (gamma_pole_distance(order) <= kDefaultPoleRadius) return "theorem2 needs 1-s off the gamma poles 0, -1, -2, ...";
        if (!(p.s.real() < 1.0 + kMaxDerivativeOrder)) return "theorem2 needs Re(s) < 9";
        return {};
    }
    case Method::RiemannHalfpoint: {
        if (p.s == Complex(1.0, 0.0)) return "riemann-halfpoint needs s != 1";
        if (std::abs(std::exp((1.0 - p.s) * std::log(2.0)) - 1.0) < 1e-12) return "riemann-halfpoint needs 2^(1-s) != 1";
        if (!(p.s.real() > -static_cast<double>(kMaxDerivativeOrder))) return "riemann-halfpoint needs Re(s) > -8";
        return {};
    }
    case Method::RiemannLimit:
        if (!(p.s.real() > 1.0)) return "riemann-limit needs Re(s)>1";
        return {};
    case Method::Hurwitz:
        if (!(p.s.real() > 1.0) || !(p.x.real() > 0.0)) return "hurwitz needs Re(s) > 1 and Re(x) > 0";
        return {};
    }
    return "unknown method";
}

Estimate evaluate(Method m, const EvaluationPoint& p, const EvalSettings& st) {
    if (const std::string why = domain_violation(m, p); !why.empty()) {
        if (m == Method::Theorem2 && why.find("gamma") != std::string::npos) throw PoleError(why);
        throw DomainError(why);
    }
    switch (m) {
    case Method::Series:
        return lerch_series(p, st.series_tol);
    case Method::Theorem1:
        return lerch_theorem1(p, st.quad);
    case Method::Theorem1RealT: {
        const LimitEstimate r = lerch_theorem1_real_t(p.t.real(), p.x, p.s, st.limit, st.quad);
        return {r.value, r.error};
    }
    case Method::Theorem2: {
        const Complex order = 1.0 - p.s;
        if (p.t.imag() > 0.0) return lerch_theorem2(p.t, p.x.real(), order, st.limit, st.quad);
        const LimitEstimate r = lerch_theorem2_real_t(p.t.real(), p.x.real(), order, st.outer, st.limit, st.quad);
        return {r.value, r.error};
    }
    case Method::RiemannHalfpoint:
        return riemann_halfpoint(p.s, st.limit, st.quad);
    case Method::RiemannLimit: {
        const LimitEstimate r = riemann_limit(p.s, st.limit, st.quad);
        return {r.value, r.error};
    }
    case Method::Hurwitz:
        return hurwitz(p.x, p.s, st.series_tol);
    }
    throw DomainError("unknown method");
}

double conjugation_residual(const EvaluationPoint& p, Method m, const EvalSettings& st) {
    return conjugation_residual(p, [&](const EvaluationPoint& q) { return evaluate(m, q, st).value; });
}

Complex parse_complex(std::string_view text) {
    if (text.empty()) throw DomainError("empty complex literal");
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            throw DomainError(fmt::format("complex literal '{}' must not contain spaces", text));
        }
    }
    if (text.back() != 'i') return {parse_double(text, text), 0.0};
    const std::string_view body = text.substr(0, text.size() - 1);
    // The split is the last sign that is neither leading nor part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) return {0.0, imag_coefficient(body, text)};
    return {parse_double(body.substr(0, split), text), imag_coefficient(body.substr(split), text)};
}

std::string format_complex(Complex v) {
    const double re = v.real() == 0.0 ? 0.0 : v.real();
    const double im = v.imag() == 0.0 ? 0.0 : v.imag();
    const double big = std::max(std::abs(re), std::abs(im));
    if (big != 0.0 && (big < 1e-4 || big >= 1e15)) return fmt::format("{:.14e}{:+.14e}i", re, im);
    const int decimals = big == 0.0 ? 14 : std::max(0, 14 - static_cast<int>(std::floor(std::log10(big))));
    return fmt::format("{:.{}f}{:+.{}f}i", re, decimals, im, decimals);
}

std::string_view status_name(Status s) noexcept {
    switch (s) {
    case Status::Pass:
        return "pass";
    case Status::Fail:
        return "fail";
    case Status::Skipped:
        return "skipped";
    }
    return "unknown";
}

ComparisonRecord compare(std::string suite, std::string label, const EvaluationPoint& p, std::string method_a,
                         Complex a, std::string method_b, Complex b, double rel_tol, double abs_tol) {
    ComparisonRecord r;
    r.suite = std::move(suite);
    r.label = std::move(label);
    r.point = p;
    r.method_a = std::move(method_a);
    r.method_b = std::move(method_b);
    r.value_a = a;
    r.value_b = b;
    r.abs_residual = std::abs(a - b);
    r.rel_residual = r.abs_residual / std::max({std::abs(a), std::abs(b), 1e-300});
    r.rel_tolerance = rel_tol;
    r.abs_tolerance = abs_tol;
    const bool ok = std::isfinite(r.abs_residual) && (r.rel_residual <= rel_tol || r.abs_residual <= abs_tol);
    r.status = ok ? Status::Pass : Status::Fail;
    return r;
}

ComparisonRecord skipped(std::string suite, std::string label, const EvaluationPoint& p, std::string method_a,
                         std::string method_b, std::string reason) {
    ComparisonRecord r;
    r.suite = std::move(suite);
    r.label = std::move(label);
    r.point = p;
    r.method_a = std::move(method_a);
    r.method_b = std::move(method_b);
    r.status = Status::Skipped;
    r.reason = std::move(reason);
    return r;
}

std::string to_json_line(const ComparisonRecord& r) {
    json j;
    j["suite"] = r.suite;
    j["label"] = r.label;
    j["point"] = {{"t", complex_json(r.point.t)}, {"x", complex_json(r.point.x)}, {"s", complex_json(r.point.s)}};
    j["method_a"] = r.method_a;
    j["method_b"] = r.method_b;
    j["value_a"] = complex_json(r.value_a);
    j["value_b"] = complex_json(r.value_b);
    j["abs_residual"] = r.abs_residual;
    j["rel_residual"] = r.rel_residual;
    j["rel_tolerance"] = r.rel_tolerance;
    j["abs_tolerance"] = r.abs_tolerance;
    j["status"] = std::string(status_name(r.status));
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j.dump();
}

std::vector<Complex> AxisSpec::values() const {
    std::vector<Complex> v;
    for (int j = 0; j < count; ++j) {
        v.push_back(count == 1 ? start : start + (stop - start) * (static_cast<double>(j) / (count - 1)));
    }
    return v;
}

SweepSpec SweepSpec::from_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(fmt::format("sweep spec is not valid JSON: {}", e.what()));
    }
    if (!root.is_object()) throw DomainError("sweep spec must be a JSON object");
    SweepSpec spec;
    try {
        spec.t = json_axis(root, "t");
        spec.x = json_axis(root, "x");
        spec.s = json_axis(root, "s");
        if (!root.contains("methods") || !root.at("methods").is_array() || root.at("methods").empty()) {
            throw DomainError("sweep spec needs a non-empty 'methods' array");
        }
        for (const json& m : root.at("methods")) {
            const auto name = m.get<std::string>();
            const auto method = parse_method(name);
            if (!method) throw DomainError(fmt::format("unknown method '{}' in sweep spec", name));
            spec.methods.push_back(*method);
        }
        if (root.contains("rel_tol")) {
            const double tol = root.at("rel_tol").get<double>();
            if (!(tol > 0.0)) throw DomainError("sweep rel_tol must be positive");
            spec.rel_tol = tol;
        }
    } catch (const json::exception& e) {
        throw DomainError(fmt::format("malformed sweep spec: {}", e.what()));
    }
    return spec;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
    const std::size_t workers =
        std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const EvalSettings& base) {
    EvalSettings st = base;
    if (spec.rel_tol) st.quad.rel_tol = *spec.rel_tol;
    std::vector<SweepRow> rows;
    for (Complex t : spec.t.values()) {
        for (Complex x : spec.x.values()) {
            for (Complex s : spec.s.values()) {
                for (Method m : spec.methods) {
                    SweepRow row;
                    row.point = {t, x, s};
                    row.method = m;
                    rows.push_back(row);
                }
            }
        }
    }
    parallel_for(rows.size(), [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.reason = domain_violation(row.method, row.point);
        if (!row.reason.empty()) return;
        const auto start = std::chrono::steady_clock::now();
        try {
            row.value = evaluate(row.method, row.point, st);
            row.ok = true;
        } catch (const Error& e) {
            row.reason = e.what();
        }
        row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    });
    return rows;
}

void write_table(std::ostream& out, const std::vector<SweepRow>& rows, TableFormat format) {
    if (format == TableFormat::Csv) out << kCsvHeader << '\n';
    for (const SweepRow& r : rows) {
        const auto& p = r.point;
        if (format == TableFormat::Csv) {
            out << num(p.t.real()) << ',' << num(p.t.imag()) << ',' << num(p.x.real()) << ',' << num(p.x.imag())
                << ',' << num(p.s.real()) << ',' << num(p.s.imag()) << ',' << method_name(r.method) << ',';
            if (r.ok) {
                out << num(r.value.value.real()) << ',' << num(r.value.value.imag()) << ',' << num(r.value.error);
            } else {
                out << ",,";
            }
            out << ',' << num(r.ms) << '\n';
        } else {
            json j = json::object();
            j["t_re"] = p.t.real();
            j["t_im"] = p.t.imag();
            j["x_re"] = p.x.real();
            j["x_im"] = p.x.imag();
            j["s_re"] = p.s.real();
            j["s_im"] = p.s.imag();
            j["method"] = std::string(method_name(r.method));
            j["val_re"] = r.ok ? json(r.value.value.real()) : json(nullptr);
            j["val_im"] = r.ok ? json(r.value.value.imag()) : json(nullptr);
            j["err"] = r.ok ? json(r.value.error) : json(nullptr);
            j["ms"] = r.ms;
            if (!r.ok) j["skipped"] = r.reason;
            out << j.dump() << '\n';
        }
    }
}

}  // namespace lerchfrac
