#pragma once

// Reference values of L(t, x, s) = sum_{n>=0} (n+x)^{-s} e^{2 pi i t n} by
// plain summation. The part of the series beyond the cutoff N is never
// guessed: it is either dropped under a proven bound or replaced by a finite
// expansion whose remainder is bounded.
//
//   Im t > 0          geometric comparison
//   |z| <= 1, z != 1  K-fold summation by parts, remainder from |f^(K)|
//   z = 1 (t in Z)    Euler-Maclaurin, remainder from |B_2M(u)| <= 4 (2M)!/(2 pi)^2M
//
// with z = e^{2 pi i t} and f(u) = (u+x)^{-s}.

#include <functional>
#include <string_view>

#include "lerchfrac/types.hpp"

namespace lerchfrac {

struct EvaluationPoint {
    Complex t;
    Complex x;
    Complex s;

    /// (Re s > 1, Im t >= 0, Re x > 0) or (Im t > 0, Re x > 0)
    [[nodiscard]] bool series_domain() const noexcept;
    /// Im t > 0 and x off (-inf, 0]
    [[nodiscard]] bool theorem1_domain() const noexcept;

    /// (-conj t, conj x, conj s)
    [[nodiscard]] EvaluationPoint conjugate_reflected() const noexcept;
};

inline constexpr long long kDefaultSeriesTermCap = 10'000'000;

/// Series value with `error` an absolute bound (tail remainder plus a
/// rounding allowance). `tol` is relative: the bound is driven below
/// tol * |value|.
/// Throws DomainError off the series domain, NonconvergenceError when more
/// than `term_cap` terms would be needed.
Estimate lerch_series(const EvaluationPoint& p, double tol, long long term_cap = kDefaultSeriesTermCap);

/// zeta(x, s) = L(0, x, s). Needs Re s > 1, Re x > 0.
Estimate hurwitz(Complex x, Complex s, double tol, long long term_cap = kDefaultSeriesTermCap);

/// zeta(s) = L(0, 1, s).
Estimate riemann_series(Complex s, double tol, long long term_cap = kDefaultSeriesTermCap);

using LerchEvaluator = std::function<Complex(const EvaluationPoint&)>;

/// |conj L(p) - L(conj-reflected p)|, both sides from the same evaluator.
double conjugation_residual(const EvaluationPoint& p, const LerchEvaluator& evaluator);

}  // namespace lerchfrac
