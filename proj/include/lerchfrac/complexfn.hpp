#pragma once

// Complex special functions with an explicit branch discipline.
//
// Every complex power and logarithm in the library goes through this header.
// The principal branch is used throughout: Arg z in (-pi, pi), with the cut
// along (-inf, 0] treated as an error rather than silently resolved to one
// side.

#include "lerchfrac/types.hpp"

namespace lerchfrac {

inline constexpr double kDefaultPoleRadius = 1e-12;

/// True when z lies on the principal-branch cut (-inf, 0], zero included.
bool on_branch_cut(Complex z) noexcept;

/// Principal logarithm. Throws BranchCutError on (-inf, 0].
Complex principal_log(Complex z);

/// exp(exponent * Log base) on the principal branch.
/// Throws BranchCutError when base lies on (-inf, 0].
Complex principal_pow(Complex base, Complex exponent);

/// sin(pi z) with exact reduction of the integer part, so that
/// relative accuracy is kept near the integers.
Complex sin_pi(Complex z) noexcept;

/// Gamma function. Lanczos approximation (g = 607/128, 15 terms) for
/// Re z >= 1/2, reflection below that.
/// Throws PoleError when z is within `pole_radius` of 0, -1, -2, ...
Complex gamma(Complex z, double pole_radius = kDefaultPoleRadius);

/// 1/Gamma(z), which is entire: returns exactly 0 at the poles instead of
/// throwing.
Complex rgamma(Complex z) noexcept;

/// Distance from z to the nearest non-positive integer.
double gamma_pole_distance(Complex z) noexcept;

/// Throws DomainError if either component of v is NaN or infinite.
Complex require_finite(Complex v, const char* what);

}  // namespace lerchfrac
