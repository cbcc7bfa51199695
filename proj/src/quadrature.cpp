#include "lerchfrac/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <fmt/format.h>

#include "lerchfrac/errors.hpp"

namespace lerchfrac {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kRoundingUlps = 4.0;

thread_local long long t_evaluations = 0;

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
// Odd indices are the Gauss abscissae; index 10 is the centre.
constexpr std::array<double, 11> kXgk = {
    .995657163025808080735527280689003, .973906528517171720077964012084452,
    .930157491355708226001207180059508, .865063366688984510732096688423493,
    .780817726586416897063717578345042, .679409568299024406234327365114874,
    .562757134668604683339000099272694, .433395394129247190799265943165784,
    .294392862701460198131126603103866, .148874338981631210884826001129720,
    0.0,
};
constexpr std::array<double, 11> kWgk = {
    .011694638867371874278064396062192, .032558162307964727478818972459390,
    .054755896574351996031381300244580, .075039674810919952767043140916190,
    .093125454583697605535065465083366, .109387158802297641899210590325805,
    .123491976262065851077958109831074, .134709217311473325928054001771707,
    .142775938577060080797094273138717, .147739104901338491374841515972068,
    .149445554002916905664936468389821,
};
constexpr std::array<double, 5> kWg = {
    .066671344308688137593568809893332, .149451349150580593145776339657697,
    .219086362515982043995534934228163, .269266719309996355091226921569469,
    .295524224714752870173892994651338,
};

struct Panel {
    double a;
    double b;
    Complex value;
    double error;
};

struct PanelOrder {
    bool operator()(const Panel& l, const Panel& r) const { return l.error < r.error; }
};

template <typename F>
Panel gauss_kronrod_21(const F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<Complex, 10> f1{};
    std::array<Complex, 10> f2{};

    const Complex fc = f(centre);
    Complex resk = fc * kWgk[10];
    Complex resg = 0.0;
    double resabs = std::abs(fc) * kWgk[10];
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(centre - dx);
        f2[j] = f(centre + dx);
        const Complex pair = f1[j] + f2[j];
        resk += kWgk[j] * pair;
        if (j % 2 == 1) resg += kWg[j / 2] * pair;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    }
    t_evaluations += 21;

    const Complex reskh = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - reskh);
    for (std::size_t j = 0; j < 10; ++j) {
        resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
    }
    resasc *= std::abs(half);
    resabs *= std::abs(half);

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    // Rounding floor: a few ulps of the absolute integrand per node. The usual
    // 50 eps is far above what a 21-term positive-weight sum loses, and summed
    // over hundreds of panels it blocks cancelling integrals.
    if (resabs > std::numeric_limits<double>::min() / (kRoundingUlps * kEps)) {
        err = std::max(kRoundingUlps * kEps * resabs, err);
    }
    return Panel{a, b, resk * half, err};
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Tanh-sinh rule on [0, 1] for a function of (y, 1-y) that is bounded at
// both ends. Levels halve the step until two successive sums agree.
constexpr double kDeStep0 = 0.5;
constexpr double kDeTauMax = 4.0;
constexpr int kDeMaxLevel = 12;

template <typename F>
Estimate tanh_sinh(const F& f, double target) {
    auto node_sum = [&](double tau, double& abs_acc) {
        const double s = kPi * std::sinh(tau);
        const double y = 1.0 / (1.0 + std::exp(-s));
        const double ym = 1.0 / (1.0 + std::exp(s));
        const double w = kPi * std::cosh(tau) * y * ym;
        if (w == 0.0) return Complex{};
        const Complex v = f(y, ym) * w;
        ++t_evaluations;
        abs_acc += std::abs(v);
        return v;
    };

    double abs_sum = 0.0;
    Complex sum = 0.0;
    const int n0 = static_cast<int>(std::ceil(kDeTauMax / kDeStep0));
    for (int j = -n0; j <= n0; ++j) sum += node_sum(j * kDeStep0, abs_sum);

    Complex prev = sum * kDeStep0;
    double h = kDeStep0;
    double last_diff = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= kDeMaxLevel; ++level) {
        h *= 0.5;
        const int n = static_cast<int>(std::ceil(kDeTauMax / h));
        for (int j = -n + 1; j <= n; j += 2) sum += node_sum(j * h, abs_sum);
        const Complex cur = sum * h;
        if (!is_finite(cur)) {
            throw DivergenceSuspected("tanh-sinh sum is not finite");
        }
        last_diff = std::abs(cur - prev);
        const double floor = 10.0 * kEps * abs_sum * h;
        if (level >= 3 && last_diff <= std::max(target, floor)) {
            return {cur, std::max(last_diff, floor)};
        }
        prev = cur;
    }
    throw ToleranceNotMet(fmt::format("tanh-sinh rule did not converge (last change {:.3g}, target {:.3g})",
                                      last_diff, target),
                          prev, last_diff);
}

Complex real_pow(double y, Complex exponent) {
    if (exponent == Complex{}) return 1.0;
    return std::exp(exponent * std::log(y));
}

// Bound on int_V^inf v^p exp(-lambda v) dv, valid once lambda V > 2p.
double tail_integral_bound(double V, double p, double lambda) {
    const double logv = std::log(V);
    if (p <= 0.0) return std::exp(p * logv - lambda * V) / lambda;
    return 2.0 * std::exp(p * logv - lambda * V) / lambda;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1 || !(truncation_margin > 0.0)) {
        throw DomainError("quadrature config requires rel_tol > 0, abs_tol > 0, max_subdivisions >= 1");
    }
    if (oscillation_period_hint && !(*oscillation_period_hint > 0.0)) {
        throw DomainError("oscillation_period_hint must be positive");
    }
}

long long integrand_evaluations() noexcept { return t_evaluations; }

Estimate integrate_unit_interval(const UnitIntegrand& h, Complex a, Complex b, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(a.real() > 0.0) || !(b.real() > 0.0)) {
        throw DomainError("unit-interval weight exponents need Re(a) > 0 and Re(b) > 0");
    }
    const Complex am1 = a - 1.0;
    const Complex bm1 = b - 1.0;
    const bool sub_left = am1 != Complex{};
    const bool sub_right = bm1 != Complex{};
    const Complex h0 = sub_left ? h(0.0, 1.0) : Complex{};
    const Complex h1 = sub_right ? h(1.0, 0.0) : Complex{};

    // y^(a-1) (1-y)^(b-1) h - h(0) y^(a-1) - h(1) (1-y)^(b-1) is bounded at both ends.
    auto reduced = [&](double y, double ym) {
        const Complex wl = real_pow(y, am1);
        const Complex wr = real_pow(ym, bm1);
        Complex v = wl * wr * h(y, ym);
        if (sub_left) v -= h0 * wl;
        if (sub_right) v -= h1 * wr;
        return v;
    };
    const Complex analytic = (sub_left ? h0 / a : Complex{}) + (sub_right ? h1 / b : Complex{});

    // Coarse pass fixes the absolute target from the integral's own size.
    const double scale = std::abs(analytic) + std::abs(h(0.5, 0.5)) * std::pow(0.5, am1.real() + bm1.real());
    const double target = std::max(cfg.rel_tol * scale * 0.25, cfg.abs_tol * 0.25);
    Estimate r = tanh_sinh(reduced, target);
    r.value += analytic;
    if (r.error > std::max(cfg.rel_tol * std::abs(r.value), cfg.abs_tol)) {
        // Refine once more against the now-known magnitude.
        const double t2 = std::max(cfg.rel_tol * std::abs(r.value) * 0.25, cfg.abs_tol * 0.25);
        r = tanh_sinh(reduced, t2);
        r.value += analytic;
    }
    return r;
}

Estimate integrate_halfline(const RealToComplex& g, SingularWeight weight, double decay_rate,
                            const QuadratureConfig& cfg, std::span<const double> breakpoints) {
    cfg.validate();
    const Complex sigma = weight.sigma;
    if (!(sigma.real() > 0.0)) {
        throw DomainError("singular weight v^(sigma-1) needs Re(sigma) > 0");
    }
    if (!(decay_rate > 0.0) || !std::isfinite(decay_rate)) {
        throw DomainError("integrate_halfline needs a positive finite decay_rate");
    }
    const Complex sm1 = sigma - 1.0;

    std::vector<double> breaks;
    for (double bp : breakpoints) {
        if (bp > 0.0 && std::isfinite(bp)) breaks.push_back(bp);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const double b0 = breaks.empty() ? 1.0 : std::min(1.0, breaks.front());

    // Envelope constant C with |g(v)| <= C exp(-lambda v).
    const double lambda = decay_rate;
    const double probe_end = b0 + std::max(1.0, std::min(60.0 / lambda, 1e6));
    double envelope = 0.0;
    double first_half = 0.0;
    double last = 0.0;
    constexpr int kProbes = 128;
    for (int j = 0; j <= kProbes; ++j) {
        const double v = probe_end * (j + 0.5) / (kProbes + 1);
        const Complex gv = g(v);
        if (!is_finite(gv)) throw DivergenceSuspected("integrand is not finite");
        last = std::abs(gv) * std::exp(lambda * v);
        envelope = std::max(envelope, last);
        if (2 * j <= kProbes) first_half = envelope;
    }
    t_evaluations += kProbes + 1;
    // Polynomial factors (derivative kernels) may double the envelope a few
    // times over the probe range; exponential growth does far more.
    if (last > 1e6 * std::max(first_half, std::numeric_limits<double>::min())) {
        throw DivergenceSuspected(fmt::format(
            "integrand does not decay at the claimed rate {:.4g}: envelope grows from {:.3g} to {:.3g}", lambda,
            first_half, last));
    }

    const double p = sigma.real() - 1.0;
    double V = std::max({b0, 1.0, 2.0 * p / lambda + 1.0});
    for (int it = 0; it < 40; ++it) {
        const double next = std::max(V, (std::max(p, 0.0) * std::log(V) - std::log(cfg.truncation_margin * lambda / 2.0)) / lambda);
        if (std::abs(next - V) < 1e-9 * V) break;
        V = next;
    }
    // Claimed decay must hold out to the truncation point.
    for (double frac : {0.5, 0.75, 1.0}) {
        const double v = probe_end + frac * std::max(0.0, V - probe_end);
        const Complex gv = g(v);
        if (!is_finite(gv)) throw DivergenceSuspected("integrand is not finite");
        const double e = std::abs(gv) * std::exp(lambda * v);
        if (e > 1e3 * std::max(envelope, std::numeric_limits<double>::min())) {
            throw DivergenceSuspected(fmt::format(
                "integrand does not decay at the claimed rate {:.4g}: envelope grows from {:.3g} to {:.3g}", lambda,
                envelope, e));
        }
        envelope = std::max(envelope, e);
    }
    const double tail_bound = envelope * tail_integral_bound(V, p, lambda);

    auto weighted = [&](double v) { return real_pow(v, sm1) * g(v); };

    // Initial partition of [b0, V].
    double max_width = std::max(2.0, (V - b0) / 4096.0);
    if (cfg.oscillation_period_hint) max_width = std::min(max_width, 0.5 * *cfg.oscillation_period_hint);
    std::vector<double> edges{b0};
    for (double bp : breaks) {
        if (bp > b0 && bp < V) edges.push_back(bp);
    }
    edges.push_back(V);

    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> active;
    std::vector<Panel> frozen;
    Complex panel_sum = 0.0;
    double panel_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i];
        const double b = edges[i + 1];
        if (!(b > a)) continue;
        const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
        for (int k = 0; k < pieces; ++k) {
            const double pa = a + (b - a) * k / pieces;
            const double pb = (k + 1 == pieces) ? b : a + (b - a) * (k + 1) / pieces;
            Panel pn = gauss_kronrod_21(weighted, pa, pb);
            if (!is_finite(pn.value)) throw DivergenceSuspected("panel sum is not finite");
            panel_sum += pn.value;
            panel_err += pn.error;
            active.push(pn);
        }
    }

    // [0, b0]: v = b0 y, so the piece is b0^sigma int_0^1 y^(sigma-1) g(b0 y) dy.
    const Complex b0_pow = real_pow(b0, sigma);
    auto de_piece = [&](double target) {
        QuadratureConfig local = cfg;
        local.abs_tol = std::max(target / std::abs(b0_pow), std::numeric_limits<double>::min());
        local.rel_tol = std::numeric_limits<double>::min();
        Estimate e = integrate_unit_interval([&](double y, double) { return g(b0 * y); }, sigma, 1.0, local);
        e.value *= b0_pow;
        e.error *= std::abs(b0_pow);
        return e;
    };
    // First pass with a loose target to learn the magnitude.
    Estimate de = de_piece(std::max(cfg.abs_tol, 1e-6 * (std::abs(panel_sum) + envelope)));

    auto target_for = [&](Complex total) { return std::max(cfg.rel_tol * std::abs(total), cfg.abs_tol); };
    double target = target_for(de.value + panel_sum);
    if (de.error > 0.25 * target) {
        de = de_piece(0.25 * target);
        target = target_for(de.value + panel_sum);
    }

    int bisections = 0;
    auto refine = [&] {
    while (!active.empty() && panel_err > target - de.error - tail_bound) {
        if (bisections >= cfg.max_subdivisions) {
            throw ToleranceNotMet(
                fmt::format("subdivision budget {} exhausted: error {:.3g} > target {:.3g}", cfg.max_subdivisions,
                            panel_err + de.error + tail_bound, target),
                de.value + panel_sum, panel_err + de.error + tail_bound);
        }
        Panel worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a) || !(mid < worst.b) || (worst.b - worst.a) < 1e-13 * std::max(1.0, worst.a)) {
            frozen.push_back(worst);
            continue;
        }
        Panel left = gauss_kronrod_21(weighted, worst.a, mid);
        Panel right = gauss_kronrod_21(weighted, mid, worst.b);
        if (!is_finite(left.value) || !is_finite(right.value)) {
            throw DivergenceSuspected("panel sum is not finite");
        }
        panel_sum += left.value + right.value - worst.value;
        panel_err += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
        ++bisections;
        target = target_for(de.value + panel_sum);
    }
    };

    // Exact resummation to shed the drift of the running totals; a second
    // refinement pass covers the case where that drift hid a shortfall.
    auto resum = [&] {
        std::vector<Panel> keep;
        keep.reserve(active.size());
        panel_sum = 0.0;
        panel_err = 0.0;
        for (const Panel& pn : frozen) {
            panel_sum += pn.value;
            panel_err += pn.error;
        }
        while (!active.empty()) {
            panel_sum += active.top().value;
            panel_err += active.top().error;
            keep.push_back(active.top());
            active.pop();
        }
        for (Panel& pn : keep) active.push(pn);
        target = target_for(de.value + panel_sum);
    };
    refine();
    resum();
    refine();
    resum();

    Estimate out{de.value + panel_sum, de.error + panel_err + tail_bound};
    if (out.error > target) {
        // Only reachable through frozen panels or the tail bound.
        throw ToleranceNotMet(fmt::format("half-line integral error {:.3g} exceeds target {:.3g}", out.error, target),
                              out.value, out.error);
    }
    return out;
}

}  // namespace lerchfrac
