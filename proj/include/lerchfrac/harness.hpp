#pragma once

// Method dispatch, complex literals, comparison records and table sweeps
// shared by the command-line tool and the tests.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lerchfrac/fracrep.hpp"
#include "lerchfrac/lerch_ref.hpp"
#include "lerchfrac/quadrature.hpp"

namespace lerchfrac {

enum class Method { Series, Theorem1, Theorem1RealT, Theorem2, RiemannHalfpoint, RiemannLimit, Hurwitz };

std::string_view method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;
const std::vector<Method>& all_methods();

/// Environment variable holding the default quadrature rel_tol.
inline constexpr const char* kRelTolEnv = "LERCHFRAC_REL_TOL";

struct EvalSettings {
    QuadratureConfig quad;
    LimitContourConfig limit;
    /// Outer schedule for theorem2 at real t (offset of t itself).
    LimitContourConfig outer{0.1, 8, 2.0, ExtrapolationMode::Richardson};
    double series_tol = 1e-15;

    /// Defaults, with quad.rel_tol taken from LERCHFRAC_REL_TOL when set.
    /// Throws DomainError if the variable does not hold a positive number.
    static EvalSettings from_environment();
};

/// Every method returns L(t, x, s) or its specialization:
///   theorem2           L(t, x, s) via the representation of order 1 - s (x real)
///   riemann-*          zeta(s); t and x are ignored
///   hurwitz            zeta(x, s); t is ignored
/// Throws DomainError or a ConvergenceError.
Estimate evaluate(Method m, const EvaluationPoint& p, const EvalSettings& st);

/// Reason string when p is outside the method's domain, empty otherwise.
std::string domain_violation(Method m, const EvaluationPoint& p);

/// conjugation_residual with a named evaluator.
double conjugation_residual(const EvaluationPoint& p, Method m, const EvalSettings& st);

/// "a", "bi", "a+bi", "a-bi", "i", "-i", exponents allowed, no spaces.
/// Throws DomainError on anything else.
Complex parse_complex(std::string_view text);

/// 15 significant digits on the larger component, fixed notation in
/// [1e-4, 1e15) and scientific outside; the imaginary sign is always written.
std::string format_complex(Complex v);

enum class Status { Pass, Fail, Skipped };
std::string_view status_name(Status s) noexcept;

struct ComparisonRecord {
    std::string suite;
    std::string label;
    EvaluationPoint point;
    std::string method_a;
    std::string method_b;
    Complex value_a;
    Complex value_b;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double rel_tolerance = 0.0;
    double abs_tolerance = 0.0;
    Status status = Status::Skipped;
    std::string reason;
};

/// Fills residuals and status: Pass when rel_residual <= rel_tol or
/// abs_residual <= abs_tol.
ComparisonRecord compare(std::string suite, std::string label, const EvaluationPoint& p, std::string method_a,
                         Complex a, std::string method_b, Complex b, double rel_tol, double abs_tol);

ComparisonRecord skipped(std::string suite, std::string label, const EvaluationPoint& p, std::string method_a,
                         std::string method_b, std::string reason);

std::string to_json_line(const ComparisonRecord& r);

struct AxisSpec {
    Complex start;
    Complex stop;
    int count = 1;
    [[nodiscard]] std::vector<Complex> values() const;
};

struct SweepSpec {
    AxisSpec t;
    AxisSpec x;
    AxisSpec s;
    std::vector<Method> methods;
    std::optional<double> rel_tol;

    /// Throws DomainError for a malformed spec.
    static SweepSpec from_json(std::string_view text);
};

struct SweepRow {
    EvaluationPoint point;
    Method method = Method::Series;
    bool ok = false;
    Estimate value;
    double ms = 0.0;
    std::string reason;
};

enum class TableFormat { Csv, JsonLines };

inline constexpr std::string_view kCsvHeader = "t_re,t_im,x_re,x_im,s_re,s_im,method,val_re,val_im,err,ms";

/// Rows ordered t, x, s, method (method fastest), computed in parallel.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const EvalSettings& st);

void write_table(std::ostream& out, const std::vector<SweepRow>& rows, TableFormat format);

/// Calls f(i) for i in [0, n) on a small pool; results must be written by index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace lerchfrac
