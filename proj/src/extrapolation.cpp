#include "lerchfrac/extrapolation.hpp"

#include <cmath>

#include "lerchfrac/errors.hpp"

namespace lerchfrac {

RichardsonResult richardson(std::span<const Complex> samples, double ratio, std::span<const Complex> exponents) {
    const std::size_t n = samples.size();
    if (n == 0) throw DomainError("richardson: no samples");
    if (!(ratio > 1.0)) throw DomainError("richardson: ratio must exceed 1");
    if (exponents.size() + 1 < n) throw DomainError("richardson: too few exponents for the sample count");

    // col[i] holds T_j^(i); entry i uses samples i..i+j.
    std::vector<Complex> col(samples.begin(), samples.end());
    RichardsonResult out;
    out.extrapolants.push_back(col[n - 1]);
    const double log_r = std::log(ratio);
    for (std::size_t j = 1; j < n; ++j) {
        const Complex w = std::exp(exponents[j - 1] * log_r);
        const Complex den = w - 1.0;
        if (std::abs(den) < 1e-12) throw DomainError("richardson: exponent with ratio^p = 1");
        for (std::size_t i = 0; i + j < n; ++i) col[i] = (w * col[i + 1] - col[i]) / den;
        out.extrapolants.push_back(col[n - 1 - j]);
    }
    out.value = out.extrapolants.back();
    out.error = n > 1 ? std::abs(out.extrapolants[n - 1] - out.extrapolants[n - 2]) : 0.0;
    return out;
}

std::vector<Complex> integer_exponents(int n) {
    std::vector<Complex> p;
    for (int j = 1; j <= n; ++j) p.emplace_back(static_cast<double>(j), 0.0);
    return p;
}

std::vector<double> successive_differences(std::span<const Complex> extrapolants) {
    std::vector<double> d;
    for (std::size_t j = 1; j < extrapolants.size(); ++j) d.push_back(std::abs(extrapolants[j] - extrapolants[j - 1]));
    return d;
}

bool cauchy_contracting(std::span<const double> diffs, double max_ratio, double noise_floor) {
    for (std::size_t j = 1; j < diffs.size(); ++j) {
        if (diffs[j] <= noise_floor) continue;
        if (diffs[j] > max_ratio * diffs[j - 1]) return false;
    }
    return true;
}

}  // namespace lerchfrac
