#include "lerchfrac/fracrep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <fmt/format.h>

#include "lerchfrac/complexfn.hpp"
#include "lerchfrac/errors.hpp"
#include "lerchfrac/extrapolation.hpp"

namespace lerchfrac {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool on_cut(Complex x) { return x.imag() == 0.0 && x.real() <= 0.0; }

// Worst-case growth of independent sample errors through the tableau.
double noise_amplification(double ratio, std::span<const Complex> exponents, std::size_t columns) {
    double amp = 1.0;
    for (std::size_t j = 0; j < columns && j < exponents.size(); ++j) {
        const Complex w = std::exp(exponents[j] * std::log(ratio));
        amp *= (std::abs(w) + 1.0) / std::abs(w - 1.0);
    }
    return amp;
}

LimitEstimate extrapolate_to_zero(const std::function<Estimate(double)>& at, const LimitContourConfig& lcfg,
                                  std::span<const Complex> exponents, const char* what) {
    lcfg.validate();
    LimitEstimate out;
    double max_err = 0.0;
    double h = lcfg.eps0;
    for (int k = 0; k < lcfg.levels; ++k, h /= lcfg.ratio) {
        const Estimate e = at(h);
        out.samples.push_back(e.value);
        max_err = std::max(max_err, e.error);
    }
    const std::size_t n = out.samples.size();
    if (lcfg.extrapolation == ExtrapolationMode::None) {
        out.value = out.samples.back();
        out.extrapolants = {out.value};
        out.error = std::abs(out.samples[n - 1] - out.samples[n - 2]) + max_err;
        out.noise_floor = 2.0 * max_err;
        return out;
    }
    const RichardsonResult r = richardson(out.samples, lcfg.ratio, exponents);
    out.value = r.value;
    out.extrapolants = r.extrapolants;
    out.noise_floor = 2.0 * noise_amplification(lcfg.ratio, exponents, n - 1) * max_err + 64.0 * kEps * std::abs(r.value);
    out.error = r.error + noise_amplification(lcfg.ratio, exponents, n - 1) * max_err;

    const std::vector<double> diffs = successive_differences(out.extrapolants);
    for (std::size_t j = 1; j < diffs.size(); ++j) {
        if (diffs[j] > out.noise_floor && diffs[j] > diffs[j - 1]) {
            throw ExtrapolationUnstable(
                fmt::format("{}: extrapolants stopped contracting at column {} ({:.3e} after {:.3e})", what, j + 1,
                            diffs[j], diffs[j - 1]),
                out.value, out.error);
        }
    }
    return out;
}

void require_off_cut(Complex x) {
    if (on_cut(x)) throw DomainError("x must lie off the cut (-inf, 0]");
}

}  // namespace

void LimitContourConfig::validate() const {
    if (!(eps0 > 0.0) || levels < 2 || !(ratio > 1.0)) {
        throw DomainError("limit contour needs eps0 > 0, levels >= 2, ratio > 1");
    }
}

double lerch_ray_angle(Complex x, Complex t) {
    if (x.imag() < 0.0 && t.imag() >= kHorizontalMinHeight) return 0.0;
    require_off_cut(x);
    return -0.5 * (kPi + std::arg(x));
}

Complex theorem1_prefactor(Complex t, Complex x, Complex s) {
    return std::exp(s * std::log(kTwoPi) + Complex(0.0, kPi) * (0.5 * s - 2.0 * t * x));
}

Complex theorem1_prefactor_power_form(Complex t, Complex x, Complex s) {
    return principal_pow(Complex(0.0, kTwoPi), s) * std::exp(Complex(0.0, -kTwoPi) * t * x);
}

Estimate lerch_differintegral(Complex t, Complex x, Complex s, const QuadratureConfig& cfg) {
    const DifferintegralSpec spec{-s, BasePoint::MinusInfinity, LerchKernel{x}, lerch_ray_angle(x, t)};
    return rl_numeric(spec, t, cfg);
}

Estimate lerch_theorem1(const EvaluationPoint& p, const QuadratureConfig& cfg) {
    if (!(p.t.imag() > 0.0)) throw DomainError("theorem1 needs Im(t) > 0");
    require_off_cut(p.x);
    const Estimate d = lerch_differintegral(p.t, p.x, p.s, cfg);
    const Complex pref = theorem1_prefactor(p.t, p.x, p.s);
    return {require_finite(pref * d.value, "lerch_theorem1"), std::abs(pref) * d.error};
}

LimitEstimate lerch_theorem1_real_t(double t, Complex x, Complex s, const LimitContourConfig& lcfg,
                                    const QuadratureConfig& cfg) {
    if (t == std::round(t)) throw DomainError("real-t evaluation needs t off the integers");
    require_off_cut(x);
    const auto exps = integer_exponents(lcfg.levels);
    return extrapolate_to_zero(
        [&](double eps) { return lerch_theorem1({Complex(t, eps), x, s}, cfg); }, lcfg, exps, "theorem1 real t");
}

Estimate riemann_halfpoint(Complex s, const LimitContourConfig& lcfg, const QuadratureConfig& cfg) {
    if (s == Complex(1.0, 0.0)) throw DomainError("riemann_halfpoint is undefined at s = 1");
    const Complex den = std::exp((1.0 - s) * std::log(2.0)) - 1.0;
    if (std::abs(den) < 1e-12) throw DomainError("riemann_halfpoint is undefined where 2^(1-s) = 1");
    const auto exps = integer_exponents(lcfg.levels);
    const LimitEstimate d = extrapolate_to_zero(
        [&](double eps) { return lerch_differintegral(Complex(0.5, eps), 1.0, s, cfg); }, lcfg, exps,
        "riemann halfpoint");
    const Complex pref = principal_pow(Complex(0.0, kTwoPi), s) / den;
    return {require_finite(pref * d.value, "riemann_halfpoint"), std::abs(pref) * d.error};
}

LimitEstimate riemann_limit(Complex s, const LimitContourConfig& lcfg, const QuadratureConfig& cfg) {
    if (!(s.real() > 1.0)) throw DomainError("riemann_limit needs Re(s)>1; the t -> 0 limit need not exist otherwise");
    // L(t, 1, s) - zeta(s) ~ t^{s-1} (c0 + c1 t + ...) + (d1 t + d2 t^2 + ...)
    std::vector<Complex> exps;
    for (int j = 0; j < lcfg.levels; ++j) {
        exps.emplace_back(static_cast<double>(j + 1), 0.0);
        exps.push_back(s - 1.0 + static_cast<double>(j));
    }
    std::stable_sort(exps.begin(), exps.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    return extrapolate_to_zero(
        [&](double t) {
            const Estimate d = lerch_differintegral(Complex(t, 0.0), 1.0, s, cfg);
            const Complex pref = theorem1_prefactor(t, 1.0, s);
            return Estimate{pref * d.value, std::abs(pref) * d.error};
        },
        lcfg, exps, "riemann limit");
}

Estimate lerch_theorem2(Complex t, double x, Complex s, const LimitContourConfig& lcfg, const QuadratureConfig& cfg) {
    if (!(t.imag() > 0.0)) throw DomainError("theorem2 needs Im(t) > 0");
    if (!(x > 0.0 && x < 1.0)) throw DomainError("theorem2 needs 0 < x < 1");
    const Complex g = gamma(s);
    const Complex g_rot = g * std::exp(Complex(0.0, kPi) * s);
    // e^{2 pi i t u}/(1 - e^{-2 pi i u}) = -LK(t+1)(u), and
    // e^{-2 pi i t u}/(1 - e^{2 pi i u}) = LK(-t)(u) = e^{-2 pi i t u} + LK(1-t)(u).
    // The split matters as Im t -> 0: LK(-t) then decays only like e^{-2 pi Im(t) v}
    // on its ray, while LK(1-t) decays at a rate near 2 pi (1 - Re t).
    const Complex k = Complex(0.0, -kTwoPi) * t;
    const auto exps = integer_exponents(lcfg.levels);
    const LimitEstimate v = extrapolate_to_zero(
        [&](double eps) {
            const Estimate a = lerch_differintegral(Complex(-x, eps), t + 1.0, s, cfg);
            Estimate b = lerch_differintegral(Complex(x, eps), 1.0 - t, s, cfg);
            b.value += rl_exp_closed(k, -s, Complex(x, eps));
            return Estimate{g * b.value + g_rot * a.value, std::abs(g) * b.error + std::abs(g_rot) * a.error};
        },
        lcfg, exps, "theorem2");
    return {require_finite(v.value, "lerch_theorem2"), v.error};
}

LimitEstimate lerch_theorem2_real_t(double t, double x, Complex s, const LimitContourConfig& outer,
                                    const LimitContourConfig& inner, const QuadratureConfig& cfg) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("real-t theorem2 needs 0 < t < 1");
    // L(t + i eta) is analytic in eta with radius min(t, 1 - t) (branch points
    // at the integers), so the first offset stays well inside that disc.
    LimitContourConfig local = outer;
    local.eps0 = std::min(outer.eps0, 0.25 * std::min(t, 1.0 - t));
    const auto exps = integer_exponents(local.levels);
    return extrapolate_to_zero([&](double eta) { return lerch_theorem2(Complex(t, eta), x, s, inner, cfg); }, local,
                               exps, "theorem2 real t");
}

Estimate functional_equation_rhs(double t, double x, Complex s, double tol) {
    if (!(t > 0.0 && t < 1.0) || !(x > 0.0 && x < 1.0)) {
        throw DomainError("functional equation check needs t and x in (0, 1)");
    }
    const Estimate a = lerch_series({Complex(-x, 0.0), t, s}, tol);
    const Estimate b = lerch_series({Complex(x, 0.0), 1.0 - t, s}, tol);
    const Complex pref = gamma(s) * std::exp(-s * std::log(kTwoPi));
    const Complex ea = std::exp(Complex(0.0, kPi) * (0.5 * s - 2.0 * t * x));
    const Complex eb = std::exp(Complex(0.0, -kPi) * (0.5 * s - 2.0 * x * (1.0 - t)));
    const Complex value = pref * (ea * a.value + eb * b.value);
    return {value, std::abs(pref) * (std::abs(ea) * a.error + std::abs(eb) * b.error)};
}

void InterchangeTestConfig::validate() const {
    const Complex left = disc_center - disc_radius;
    if (left.imag() == 0.0 && left.real() >= 0.0) throw DomainError("interchange disc needs c - R off [0, inf)");
    if (!(delta > 0.0)) throw DomainError("interchange check needs delta > 0");
    if (!(disc_radius >= 0.0)) throw DomainError("interchange disc radius must be non-negative");
    if (!(disc_center.imag() - disc_radius > 0.0)) throw DomainError("interchange disc must stay in Im(t) > 0");
    if (partial_terms.empty()) throw DomainError("interchange check needs at least one partial sum");
    for (int n : partial_terms) {
        if (n < 0) throw DomainError("partial sum lengths must be non-negative");
    }
}

InterchangeResult interchange_check(const InterchangeTestConfig& icfg, const EvaluationPoint& p,
                                    const QuadratureConfig& cfg) {
    icfg.validate();
    if (std::abs(p.t - icfg.disc_center) > icfg.disc_radius) throw DomainError("t must lie in the interchange disc");
    if (!(p.s.real() > 1.0)) throw DomainError("interchange check needs Re(s) > 1");
    if (!(p.x.imag() < 0.0)) throw DomainError("interchange check needs Im(x) < 0");

    const Estimate full = lerch_differintegral(p.t, p.x, p.s, cfg);
    const double b = p.t.imag();
    const double sigma = p.s.real();
    const double head = std::abs(std::exp(Complex(0.0, kTwoPi) * p.t * p.x)) * std::exp(std::abs(p.s.imag()) * kPi);
    const Complex ray_start = icfg.disc_center - icfg.disc_radius;

    InterchangeResult out;
    out.full_value = full.value;
    out.passed = true;
    for (int N : icfg.partial_terms) {
        ExponentialSumKernel kernel;
        Complex closed = 0.0;
        for (int n = 0; n <= N; ++n) {
            const Complex k = Complex(0.0, kTwoPi) * (static_cast<double>(n) + p.x);
            kernel.terms.emplace_back(1.0, k);
            closed += rl_exp_closed(k, -p.s, p.t);
        }
        const Estimate numeric = rl_numeric({-p.s, BasePoint::MinusInfinity, kernel, 0.0}, p.t, cfg);
        const double residual = std::abs(numeric.value - closed);
        const double tol = std::max({10.0 * cfg.rel_tol * std::abs(closed), 10.0 * cfg.abs_tol, 2.0 * numeric.error});

        const double gap = std::abs(closed - full.value);
        const double n1 = static_cast<double>(N + 1);
        const double bound = head * std::pow(kTwoPi * (n1 + p.x.real()), -sigma) * std::exp(-kTwoPi * b * n1) /
                                 (1.0 - std::exp(-kTwoPi * b)) +
                             full.error + 64.0 * kEps * (N + 1.0) * std::abs(full.value);

        double sup = 0.0;
        for (int j = 0; j <= 400; ++j) {
            const Complex u = ray_start - 0.25 * j;
            const Complex tail =
                std::exp(Complex(0.0, kTwoPi) * u * (n1 + p.x)) / (1.0 - std::exp(Complex(0.0, kTwoPi) * u));
            sup = std::max(sup, std::abs(tail) * std::abs(principal_pow(u, icfg.delta + p.s)));
        }

        out.partial_terms.push_back(N);
        out.quadrature_values.push_back(numeric.value);
        out.closed_values.push_back(closed);
        out.residuals.push_back(residual);
        out.tolerances.push_back(tol);
        out.tail_gaps.push_back(gap);
        out.tail_bounds.push_back(bound);
        if (!out.ray_tail_sup.empty() && sup > out.ray_tail_sup.back()) out.passed = false;
        out.ray_tail_sup.push_back(sup);
        if (residual > tol || gap > bound) out.passed = false;
    }
    return out;
}

}  // namespace lerchfrac
