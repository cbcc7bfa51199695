#include <doctest.h>

#include <random>

#include "lerchfrac/complexfn.hpp"
#include "lerchfrac/errors.hpp"
#include "lerchfrac/extrapolation.hpp"
#include "lerchfrac/fracrep.hpp"
#include "oracle.hpp"

using namespace lerchfrac;
using oracle::rel;

namespace {
const QuadratureConfig kQuad;
const LimitContourConfig kLimit;
}  // namespace

TEST_CASE("theorem1 against the series") {
    const EvaluationPoint a{Complex(0.2, 0.6), Complex(0.7, -0.4), 2.5};
    CHECK(rel(lerch_theorem1(a, kQuad).value, oracle::lerch_direct(a.t, a.x, a.s)) <= 1e-8);
    const EvaluationPoint b{Complex(0.1, 0.8), Complex(1, -0.5), 3.0};
    CHECK(rel(lerch_theorem1(b, kQuad).value, oracle::lerch_direct(b.t, b.x, b.s)) <= 1e-8);
}

TEST_CASE("theorem1 off the horizontal-ray region") {
    // Real x and Im x > 0 use the tilted ray.
    for (const EvaluationPoint& p : {EvaluationPoint{Complex(0.2, 0.6), 1.3, 2.5},
                                     EvaluationPoint{Complex(-0.4, 0.3), Complex(0.6, 0.5), Complex(1.5, 1.0)},
                                     EvaluationPoint{Complex(0.3, 0.02), Complex(0.9, -0.1), 2.0},
                                     EvaluationPoint{Complex(0.2, 0.6), Complex(0.7, -0.4), -0.5}}) {
        CHECK(rel(lerch_theorem1(p, kQuad).value, oracle::lerch_direct(p.t, p.x, p.s)) <= 1e-8);
    }
}

TEST_CASE("theorem1 conjugation at Re s < 1") {
    const EvaluationPoint p{Complex(0.2, 0.6), Complex(0.7, -0.4), -0.5};
    const double r = conjugation_residual(p, [](const EvaluationPoint& q) { return lerch_theorem1(q, kQuad).value; });
    CHECK(r <= 1e-6);
}

TEST_CASE("prefactor identity") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Complex s(3 * u(rng), 2 * u(rng)), t(u(rng), u(rng)), x(1.5 + u(rng), u(rng));
        CHECK(rel(theorem1_prefactor(t, x, s), theorem1_prefactor_power_form(t, x, s)) <= 1e-13);
    }
}

TEST_CASE("ray policy") {
    CHECK(lerch_ray_angle(Complex(0.7, -0.4), Complex(0.2, 0.6)) == 0.0);
    CHECK(lerch_ray_angle(Complex(0.7, -0.4), Complex(0.2, 0.01)) < 0.0);
    CHECK(lerch_ray_angle(1.0, 0.3) == doctest::Approx(-kPi / 2));
    CHECK(lerch_ray_angle(Complex(0.0, 1.0), 0.3) == doctest::Approx(-3 * kPi / 4));
    CHECK_THROWS_AS(lerch_ray_angle(-1.0, 0.3), DomainError);
}

TEST_CASE("theorem1 at real t") {
    const LimitEstimate a = lerch_theorem1_real_t(1.0 / 3.0, 1.0, 2.0, kLimit, kQuad);
    CHECK(rel(a.value, oracle::kLerchThird) <= 1e-6);
    CHECK(cauchy_contracting(successive_differences(a.extrapolants), 0.6, a.noise_floor));
    const LimitEstimate b = lerch_theorem1_real_t(0.5, 1.0, 2.0, kLimit, kQuad);
    CHECK(rel(b.value, oracle::kZeta2 / 2) <= 1e-6);
    const LimitEstimate c = lerch_theorem1_real_t(0.5, 1.0, 0.75, kLimit, kQuad);
    CHECK(rel(c.value, (1.0 - std::pow(2.0, 0.25)) * oracle::kZeta075) <= 1e-6);
    CHECK_THROWS_AS(lerch_theorem1_real_t(1.0, 1.0, 2.0, kLimit, kQuad), DomainError);
}

TEST_CASE("zeta from the half point") {
    CHECK(rel(riemann_halfpoint(2.0, kLimit, kQuad).value, oracle::kZeta2) <= 1e-6);
    CHECK(rel(riemann_halfpoint(3.0, kLimit, kQuad).value, oracle::kZeta3) <= 1e-6);
    CHECK(rel(riemann_halfpoint(0.75, kLimit, kQuad).value, oracle::kZeta075) <= 1e-6);
    // zeta(-1) from zeta(2) through the reflection formula.
    const double zm1 = 2.0 * std::pow(2 * kPi, -2.0) * std::sin(-kPi / 2) * std::tgamma(2.0) * oracle::kZeta2;
    CHECK(std::abs(riemann_halfpoint(-1.0, kLimit, kQuad).value - zm1) <= 1e-5);
    CHECK_THROWS_AS(riemann_halfpoint(1.0, kLimit, kQuad), DomainError);
}

TEST_CASE("zeta as a limit in t") {
    CHECK(rel(riemann_limit(2.0, kLimit, kQuad).value, oracle::kZeta2) <= 1e-5);
    CHECK(rel(riemann_limit(4.0, kLimit, kQuad).value, oracle::kZeta4) <= 1e-5);
    const LimitEstimate near = riemann_limit(1.05, kLimit, kQuad);
    CHECK(rel(near.value, oracle::kZeta105) <= 1e-5);
    CHECK(cauchy_contracting(successive_differences(near.extrapolants), 0.6, near.noise_floor));
    CHECK_THROWS_AS(riemann_limit(1.0, kLimit, kQuad), DomainError);
    CHECK_THROWS_AS(riemann_limit(Complex(0.5, 3.0), kLimit, kQuad), DomainError);
}

TEST_CASE("theorem2 against the series at 1 - s") {
    const Complex t1(0.3, 0.5);
    CHECK(rel(lerch_theorem2(t1, 0.4, -0.5, kLimit, kQuad).value, oracle::lerch_direct(t1, 0.4, 1.5)) <= 1e-5);
    const Complex t2(0.25, 0.7);
    CHECK(rel(lerch_theorem2(t2, 0.5, -1.5, kLimit, kQuad).value, oracle::lerch_direct(t2, 0.5, 2.5)) <= 1e-5);
    const Complex t3(-0.6, 0.4);
    CHECK(rel(lerch_theorem2(t3, 0.7, Complex(0.4, 1.0), kLimit, kQuad).value,
              oracle::lerch_direct(t3, 0.7, Complex(0.6, -1.0))) <= 1e-5);
    CHECK_THROWS_AS(lerch_theorem2(t1, 0.4, 0.0, kLimit, kQuad), PoleError);
    CHECK_THROWS_AS(lerch_theorem2(t1, 1.4, -0.5, kLimit, kQuad), DomainError);
    CHECK_THROWS_AS(lerch_theorem2(0.3, 0.4, -0.5, kLimit, kQuad), DomainError);
}

TEST_CASE("functional equation at real t") {
    const LimitContourConfig outer{0.1, 6, 2.0, ExtrapolationMode::Richardson};
    for (auto [t, x, s] : {std::tuple{0.3, 0.4, Complex(1.5)}, std::tuple{0.7, 0.25, Complex(2.0, 0.5)}}) {
        const LimitEstimate lhs = lerch_theorem2_real_t(t, x, s, outer, kLimit, kQuad);
        const Estimate rhs = functional_equation_rhs(t, x, s, 1e-15);
        CHECK(rel(lhs.value, rhs.value) <= 1e-5);
    }
    CHECK_THROWS_AS(functional_equation_rhs(1.2, 0.4, 1.5, 1e-15), DomainError);
}

TEST_CASE("termwise integration of the geometric kernel") {
    const EvaluationPoint p{Complex(0.2, 0.6), Complex(0.7, -0.4), 2.5};
    InterchangeTestConfig icfg;
    icfg.disc_center = p.t;
    icfg.disc_radius = 0.1;
    const InterchangeResult r = interchange_check(icfg, p, kQuad);
    CHECK(r.passed);
    REQUIRE(r.residuals.size() == 5);
    CHECK(r.residuals[0] <= 1e-9);
    CHECK(r.residuals[2] <= 1e-9);
    // Geometric tail with the full differintegral.
    const double bound = std::exp(-kTwoPi * 40 * 0.6) / (1 - std::exp(-kTwoPi * 0.6)) + 1e-8;
    CHECK(r.tail_gaps[4] <= bound);
    for (std::size_t j = 1; j < r.ray_tail_sup.size(); ++j) CHECK(r.ray_tail_sup[j] <= r.ray_tail_sup[j - 1]);
    CHECK(r.ray_tail_sup.back() < 1e-10);

    InterchangeTestConfig bad = icfg;
    bad.disc_radius = 0.7;
    CHECK_THROWS_AS(interchange_check(bad, p, kQuad), DomainError);
    CHECK_THROWS_AS(interchange_check(icfg, {p.t, p.x, 0.8}, kQuad), DomainError);
}

TEST_CASE("unstable extrapolation is reported") {
    // Offsets 0.9, 0.82, 0.74 at t = 0.02 are far outside the range of the error model.
    LimitContourConfig cfg{0.9, 3, 1.1, ExtrapolationMode::Richardson};
    CHECK_THROWS_AS(lerch_theorem1_real_t(0.02, 1.0, 2.0, cfg, kQuad), ExtrapolationUnstable);
}
