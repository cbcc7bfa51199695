#pragma once

#include <complex>
#include <numbers>

namespace lerchfrac {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// A computed value together with an estimate of its absolute error.
struct Estimate {
    Complex value;
    double error = 0.0;
};

}  // namespace lerchfrac
