#include <doctest.h>

#include <random>

#include "lerchfrac/complexfn.hpp"
#include "lerchfrac/errors.hpp"
#include "oracle.hpp"

using namespace lerchfrac;
using oracle::rel;

TEST_CASE("gamma at classical points") {
    CHECK(rel(lerchfrac::gamma(1.0), 1.0) < 1e-15);
    CHECK(rel(lerchfrac::gamma(0.5), std::sqrt(kPi)) < 1e-15);
    CHECK(rel(lerchfrac::gamma(4.0), 6.0) < 1e-15);
    CHECK(rel(lerchfrac::gamma(-0.5), -2.0 * std::sqrt(kPi)) < 1e-14);
    CHECK(rel(lerchfrac::gamma(0.001), 999.423772484595445298321) < 1e-14);
}

TEST_CASE("gamma against 25-digit fixtures") {
    CHECK(rel(lerchfrac::gamma(Complex(0, 1)), Complex(-0.1549498283018106851, -0.4980156681183560427)) < 1e-14);
    CHECK(rel(lerchfrac::gamma(Complex(0.3, 2.5)), Complex(0.03583188498415013004, -0.02026481436517500270)) < 1e-13);
    CHECK(rel(lerchfrac::gamma(Complex(-2.7, 0.4)), Complex(-0.4260136481687374289, 0.03648241905987966882)) < 1e-13);
    CHECK(rel(lerchfrac::gamma(Complex(5.5, -3)), Complex(6.243018517421103280, 21.47496376208063625)) < 1e-13);
}

TEST_CASE("gamma(i) satisfies the reflection formula") {
    const Complex z(0, 1);
    const Complex lhs = lerchfrac::gamma(z) * lerchfrac::gamma(1.0 - z);
    CHECK(std::abs(lhs * std::sin(kPi * z) / kPi - 1.0) < 1e-12);
    // |Gamma(i)|^2 = pi / (sinh(pi))
    CHECK(std::abs(std::norm(lerchfrac::gamma(z)) - kPi / std::sinh(kPi)) < 1e-14);
}

TEST_CASE("gamma recurrence and reflection on a random strip") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-6.0, 6.0), im(-4.0, 4.0);
    int checked = 0;
    while (checked < 100) {
        const Complex z(re(rng), im(rng));
        if (gamma_pole_distance(z) < 0.05 || gamma_pole_distance(1.0 - z) < 0.05) continue;
        ++checked;
        const Complex g1 = lerchfrac::gamma(z + 1.0);
        CHECK(std::abs(g1 - z * lerchfrac::gamma(z)) / std::abs(g1) <= 1e-12);
        CHECK(std::abs(lerchfrac::gamma(z) * lerchfrac::gamma(1.0 - z) * sin_pi(z) / kPi - 1.0) <= 1e-11);
    }
}

TEST_CASE("gamma poles") {
    CHECK_THROWS_AS(lerchfrac::gamma(0.0), PoleError);
    CHECK_THROWS_AS(lerchfrac::gamma(-3.0), PoleError);
    CHECK_THROWS_AS(lerchfrac::gamma(Complex(-2.0, 1e-13)), PoleError);
    CHECK_NOTHROW(lerchfrac::gamma(Complex(-2.0, 1e-6)));
    CHECK_NOTHROW(lerchfrac::gamma(-2.0 + 1e-9, 1e-10));
    CHECK(rgamma(-2.0) == Complex(0.0));
    CHECK(rel(rgamma(Complex(0.3, 1.1)) * lerchfrac::gamma(Complex(0.3, 1.1)), 1.0) < 1e-14);
}

TEST_CASE("principal powers") {
    CHECK(rel(principal_pow(Complex(0, 1), 0.5), std::polar(1.0, kPi / 4)) < 1e-15);
    CHECK(rel(principal_pow(4.0, 0.5), 2.0) < 1e-15);
    CHECK(rel(principal_pow(Complex(0, 6 * kPi), -2.0), -1.0 / (36 * kPi * kPi)) < 1e-15);
    CHECK_THROWS_AS(principal_pow(-1.0, 0.5), BranchCutError);
    CHECK_THROWS_AS(principal_pow(0.0, 0.5), BranchCutError);
    CHECK_THROWS_AS(principal_log(Complex(-2.0, 0.0)), BranchCutError);
    CHECK(principal_pow(Complex(-1.0, 1e-300), 0.5).real() >= 0.0);
}

TEST_CASE("integer powers match repeated multiplication") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Complex b(u(rng), u(rng));
        if (on_branch_cut(b)) continue;
        for (int m = -4; m <= 4; ++m) {
            Complex expect = 1.0;
            for (int j = 0; j < std::abs(m); ++j) expect *= b;
            if (m < 0) expect = 1.0 / expect;
            CHECK(rel(principal_pow(b, static_cast<double>(m)), expect) <= 1e-13);
        }
    }
}

TEST_CASE("principal power stays on the principal branch") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Complex b(u(rng), u(rng));
        const Complex e(u(rng), u(rng));
        const Complex v = principal_pow(b, e);
        const double a = std::atan2(v.imag(), v.real());
        CHECK(a > -kPi);
        CHECK(a <= kPi);
        CHECK(v == std::exp(e * principal_log(b)));
    }
}

TEST_CASE("sin_pi keeps relative accuracy near integers") {
    CHECK(sin_pi(3.0) == Complex(0.0));
    CHECK(rel(sin_pi(3.0 + 1e-10), -kPi * 1e-10) < 1e-6);
    CHECK(rel(sin_pi(Complex(0.25, 0.5)), std::sin(kPi * Complex(0.25, 0.5))) < 1e-14);
}

TEST_CASE("require_finite") {
    CHECK_THROWS_AS(require_finite(Complex(NAN, 0), "x"), DomainError);
    CHECK_THROWS_AS(require_finite(Complex(0, INFINITY), "x"), DomainError);
    CHECK(require_finite(Complex(1, 2), "x") == Complex(1, 2));
}
