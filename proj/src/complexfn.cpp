#include "lerchfrac/complexfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "lerchfrac/errors.hpp"

namespace lerchfrac {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;

constexpr std::array<double, 15> kLanczosCoeffs = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

// log Gamma(z) for Re z >= 1/2, not branch-normalised (only exp() of it is used).
Complex lanczos_log_gamma(Complex z) {
    const Complex zm1 = z - 1.0;
    Complex series = kLanczosCoeffs[0];
    for (std::size_t k = 1; k < kLanczosCoeffs.size(); ++k) {
        series += kLanczosCoeffs[k] / (zm1 + static_cast<double>(k));
    }
    const Complex t = zm1 + kLanczosG + 0.5;
    return 0.5 * std::log(kTwoPi) + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

bool on_branch_cut(Complex z) noexcept { return z.imag() == 0.0 && z.real() <= 0.0; }

Complex principal_log(Complex z) {
    if (on_branch_cut(z)) {
        throw BranchCutError(fmt::format("logarithm argument {}{:+}i lies on the branch cut (-inf, 0]",
                                         z.real(), z.imag()));
    }
    return std::log(z);
}

Complex principal_pow(Complex base, Complex exponent) {
    if (on_branch_cut(base)) {
        throw BranchCutError(fmt::format("power base {}{:+}i lies on the branch cut (-inf, 0]",
                                         base.real(), base.imag()));
    }
    return std::exp(exponent * std::log(base));
}

Complex sin_pi(Complex z) noexcept {
    const double n = std::round(z.real());
    const Complex r(z.real() - n, z.imag());
    const Complex s = std::sin(kPi * r);
    return std::fmod(std::fabs(n), 2.0) == 1.0 ? -s : s;
}

double gamma_pole_distance(Complex z) noexcept {
    const double n = std::min(0.0, std::round(z.real()));
    return std::abs(z - n);
}

Complex gamma(Complex z, double pole_radius) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("gamma argument is not finite");
    }
    if (gamma_pole_distance(z) <= pole_radius) {
        throw PoleError(fmt::format("gamma argument {}{:+}i is within {} of a pole at a non-positive integer",
                                    z.real(), z.imag(), pole_radius));
    }
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return kPi / (sin_pi(z) * std::exp(lanczos_log_gamma(1.0 - z)));
    }
    return std::exp(lanczos_log_gamma(z));
}

Complex rgamma(Complex z) noexcept {
    if (z.real() < 0.5) {
        return sin_pi(z) * std::exp(lanczos_log_gamma(1.0 - z)) / kPi;
    }
    return std::exp(-lanczos_log_gamma(z));
}

Complex require_finite(Complex v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw DomainError(fmt::format("{} produced a non-finite value", what));
    }
    return v;
}

}  // namespace lerchfrac
