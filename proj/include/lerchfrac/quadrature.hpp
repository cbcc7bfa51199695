#pragma once

// Numerical integration on [0, inf) and [0, 1] for integrands carrying an
// algebraic endpoint weight.
//
// Half-line integrals are split as
//   [0, b0]  double-exponential (tanh-sinh) rule, endpoint weight subtracted
//   [b0, V]  globally adaptive 21-point Gauss-Kronrod panels
//   [V, inf) dropped, with an analytic bound from the decay envelope
// where b0 = min(1, first breakpoint) and V is chosen from the envelope.

#include <functional>
#include <optional>
#include <span>

#include "lerchfrac/types.hpp"

namespace lerchfrac {

struct QuadratureConfig {
    double rel_tol = 1e-11;
    double abs_tol = 1e-14;
    /// Budget of panel bisections in the adaptive stage.
    int max_subdivisions = 2000;
    /// Tail beyond V is bounded by truncation_margin times the envelope constant.
    double truncation_margin = 1e-16;
    /// When set, initial panels are no wider than half of it.
    std::optional<double> oscillation_period_hint;

    /// Throws DomainError unless rel_tol > 0, abs_tol > 0, max_subdivisions >= 1.
    void validate() const;
};

/// The weight v^(sigma-1); integrable at 0 when Re(sigma) > 0.
struct SingularWeight {
    Complex sigma;
};

using RealToComplex = std::function<Complex(double)>;

/// Q ~ int_0^inf v^(sigma-1) g(v) dv.
///
/// `decay_rate` > 0 asserts |g(v)| <= C exp(-decay_rate v) for large v; C is
/// estimated from samples and used to pick the truncation point. Abscissae in
/// `breakpoints` become panel edges (use them for near-singular points of g).
///
/// Throws ToleranceNotMet when the bisection budget runs out, DivergenceSuspected
/// when g does not decay as claimed or produces non-finite values, and
/// DomainError for an invalid weight or config.
Estimate integrate_halfline(const RealToComplex& g, SingularWeight weight, double decay_rate,
                            const QuadratureConfig& cfg, std::span<const double> breakpoints = {});

/// h evaluated at (y, 1 - y); both are passed so callers keep full relative
/// accuracy near either endpoint.
using UnitIntegrand = std::function<Complex(double y, double one_minus_y)>;

/// int_0^1 y^(a-1) (1-y)^(b-1) h(y) dy for Re a > 0, Re b > 0 and h smooth on [0, 1].
/// The endpoint behaviour is subtracted analytically before the tanh-sinh rule
/// is applied, so small Re a or Re b cost nothing extra.
Estimate integrate_unit_interval(const UnitIntegrand& h, Complex a, Complex b,
                                 const QuadratureConfig& cfg);

/// Number of integrand evaluations made by the calling thread so far.
/// Diagnostics only.
long long integrand_evaluations() noexcept;

}  // namespace lerchfrac
