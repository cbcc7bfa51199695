#pragma once

// Richardson extrapolation of a sequence f(h_k), h_k = h0 / ratio^k, to h = 0
// under the error model f(h) = f(0) + sum_j c_j h^{p_j}. Exponents may be
// complex; a repeated exponent also removes the matching h^p log h term.

#include <span>
#include <vector>

#include "lerchfrac/types.hpp"

namespace lerchfrac {

struct RichardsonResult {
    Complex value;
    /// |last extrapolant - previous extrapolant|
    double error = 0.0;
    /// Most refined entry of each tableau column, column 0 first.
    std::vector<Complex> extrapolants;
};

/// Needs samples.size() - 1 exponents at least (extra ones are ignored).
RichardsonResult richardson(std::span<const Complex> samples, double ratio, std::span<const Complex> exponents);

/// Exponents 1, 2, ..., n.
std::vector<Complex> integer_exponents(int n);

/// Successive differences |e_j - e_{j-1}| of the extrapolants.
std::vector<double> successive_differences(std::span<const Complex> extrapolants);

/// True when every difference above `noise_floor` is at most `max_ratio`
/// times the one before it. Differences at or under the floor are rounding
/// noise and are not held to the ratio.
bool cauchy_contracting(std::span<const double> diffs, double max_ratio, double noise_floor);

}  // namespace lerchfrac
