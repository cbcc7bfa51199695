#include <doctest.h>

#include <cmath>

#include "lerchfrac/extrapolation.hpp"
#include "oracle.hpp"

using namespace lerchfrac;

TEST_CASE("polynomial error model is removed exactly") {
    std::vector<Complex> samples;
    for (int k = 0; k < 5; ++k) {
        const double h = 0.1 / std::pow(2.0, k);
        samples.emplace_back(3.0 + 2.0 * h - 5.0 * h * h + h * h * h, h);
    }
    // Im part is 0 + h: the limit is exactly 3.
    const auto r = richardson(samples, 2.0, integer_exponents(4));
    CHECK(std::abs(r.value - Complex(3.0)) < 1e-13);
    CHECK(r.extrapolants.size() == 5);
    CHECK(r.extrapolants.front() == samples.back());
}

TEST_CASE("fractional and complex exponents") {
    const Complex p(0.5, 0.3);
    std::vector<Complex> samples;
    for (int k = 0; k < 6; ++k) {
        const double h = 0.2 / std::pow(2.0, k);
        samples.push_back(1.0 + 0.7 * std::pow(h, p) + 0.2 * h);
    }
    const std::vector<Complex> exps{p, 1.0, p + 1.0, 2.0, p + 2.0};
    const auto r = richardson(samples, 2.0, exps);
    CHECK(std::abs(r.value - 1.0) < 1e-12);
    // Integer exponents alone leave the h^p term behind.
    CHECK(std::abs(richardson(samples, 2.0, integer_exponents(5)).value - 1.0) > 1e-4);
}

TEST_CASE("successive differences and the contraction test") {
    const std::vector<Complex> e{1.0, 1.1, 1.11, 1.111};
    const auto d = successive_differences(e);
    REQUIRE(d.size() == 3);
    CHECK(d[0] == doctest::Approx(0.1));
    CHECK(cauchy_contracting(d, 0.6, 0.0));
    const std::vector<double> grow{1e-2, 1e-3, 5e-3};
    CHECK_FALSE(cauchy_contracting(grow, 0.6, 0.0));
    // Growth below the noise floor is tolerated.
    CHECK(cauchy_contracting(grow, 0.6, 1e-2));
    const std::vector<double> slow{1e-2, 8e-3};
    CHECK_FALSE(cauchy_contracting(slow, 0.6, 0.0));
}
