#include "lerchfrac/differintegral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "lerchfrac/complexfn.hpp"
#include "lerchfrac/errors.hpp"

namespace lerchfrac {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// f^(m)(u) = (2 pi i)^m e^{2 pi i u x} P_m(q) / (1 - q)^{m+1}, q = e^{2 pi i u},
// with P_0 = 1 and P_{m+1} = x(1-q)P_m + q(1-q)P_m' + (m+1) q P_m.
std::vector<Complex> lerch_numerator(Complex x, int m) {
    std::vector<Complex> p{1.0};
    for (int k = 0; k < m; ++k) {
        std::vector<Complex> next(p.size() + 1, 0.0);
        for (std::size_t j = 0; j < p.size(); ++j) {
            const double jd = static_cast<double>(j);
            next[j] += (x + jd) * p[j];
            next[j + 1] += (static_cast<double>(k + 1) - jd - x) * p[j];
        }
        p = std::move(next);
    }
    return p;
}

class LerchDerivative {
public:
    LerchDerivative(Complex x, int m)
        : x_(x), m_(m), poly_(lerch_numerator(x, m)), scale_(std::pow(Complex(0.0, kTwoPi), m)) {}

    Complex operator()(Complex u) const {
        const Complex q = std::exp(Complex(0.0, kTwoPi) * u);
        Complex num = 0.0;
        for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) num = num * q + *it;
        const Complex one_minus_q = 1.0 - q;
        Complex den = one_minus_q;
        for (int k = 0; k < m_; ++k) den *= one_minus_q;
        return scale_ * std::exp(Complex(0.0, kTwoPi) * u * x_) * num / den;
    }

private:
    Complex x_;
    int m_;
    std::vector<Complex> poly_;
    Complex scale_;
};

std::function<Complex(Complex)> derivative_evaluator(const KernelDescriptor& kernel, int m) {
    return std::visit(
        overloaded{
            [m](const ExponentialKernel& e) -> std::function<Complex(Complex)> {
                const Complex km = std::pow(e.k, m);
                return [k = e.k, km](Complex u) { return km * std::exp(k * u); };
            },
            [m](const PowerKernel& p) -> std::function<Complex(Complex)> {
                Complex falling = 1.0;
                for (int j = 0; j < m; ++j) falling *= p.beta - static_cast<double>(j);
                return [beta = p.beta, falling, m](Complex u) {
                    return falling * principal_pow(u, beta - static_cast<double>(m));
                };
            },
            [m](const LerchKernel& l) -> std::function<Complex(Complex)> { return LerchDerivative(l.x, m); },
            [m](const ExponentialSumKernel& s) -> std::function<Complex(Complex)> {
                std::vector<std::pair<Complex, Complex>> scaled;
                scaled.reserve(s.terms.size());
                for (const auto& [c, k] : s.terms) scaled.emplace_back(c * std::pow(k, m), k);
                return [scaled](Complex u) {
                    Complex acc = 0.0;
                    for (const auto& [c, k] : scaled) acc += c * std::exp(k * u);
                    return acc;
                };
            },
        },
        kernel);
}

int reduction_order(Complex alpha) {
    if (alpha.real() < 0.0) return 0;
    return static_cast<int>(std::floor(alpha.real())) + 1;
}

// Numerical power-kernel differintegral with base point 0.
// D^gamma t^beta = t^{beta-gamma} / Gamma(-gamma) int_0^1 y^beta (1-y)^{-gamma-1} dy  (Re gamma < 0),
// then m ordinary derivatives of the resulting power for the derivative orders.
Estimate power_numeric(Complex beta, Complex alpha, Complex t, const QuadratureConfig& cfg) {
    if (!(beta.real() > -1.0)) {
        throw DomainError("power kernel needs Re(beta) > -1");
    }
    if (on_branch_cut(t)) {
        throw BranchCutError("base point 0 needs t off the cut (-inf, 0]");
    }
    const int m = reduction_order(alpha);
    const Complex gam = alpha - static_cast<double>(m);
    const Estimate beta_fn =
        integrate_unit_interval([](double, double) { return Complex{1.0}; }, beta + 1.0, -gam, cfg);
    const Complex p = beta - gam;
    Complex falling = 1.0;
    for (int j = 0; j < m; ++j) falling *= p - static_cast<double>(j);
    const Complex pref = rgamma(-gam) * falling * principal_pow(t, beta - alpha);
    return {pref * beta_fn.value, std::abs(pref) * beta_fn.error};
}

}  // namespace

Complex kernel_derivative(const KernelDescriptor& kernel, int m, Complex u) {
    if (m < 0) throw DomainError("derivative order must be non-negative");
    return derivative_evaluator(kernel, m)(u);
}

double kernel_decay_rate(const KernelDescriptor& kernel, double ray_angle) {
    const Complex dir = std::polar(1.0, ray_angle);
    return std::visit(overloaded{
                          [&](const ExponentialKernel& e) { return (e.k * dir).real(); },
                          [](const PowerKernel&) { return 0.0; },
                          [&](const LerchKernel& l) { return -kTwoPi * (dir * l.x).imag(); },
                          [&](const ExponentialSumKernel& s) {
                              double rate = std::numeric_limits<double>::infinity();
                              for (const auto& [c, k] : s.terms) {
                                  if (c != Complex{}) rate = std::min(rate, (k * dir).real());
                              }
                              return rate;
                          },
                      },
                      kernel);
}

Complex rl_exp_closed(Complex k, Complex alpha, Complex t) {
    return require_finite(principal_pow(k, alpha) * std::exp(k * t), "rl_exp_closed");
}

Complex rl_power_closed(Complex beta, Complex alpha, Complex t) {
    if (!(beta.real() > -1.0)) {
        throw DomainError("power kernel needs Re(beta) > -1");
    }
    const Complex num = gamma(beta + 1.0);
    const Complex den = gamma(beta - alpha + 1.0);
    return require_finite(num / den * principal_pow(t, beta - alpha), "rl_power_closed");
}

Estimate rl_numeric(const DifferintegralSpec& spec, Complex t, const QuadratureConfig& cfg) {
    cfg.validate();
    const Complex alpha = spec.order;
    if (spec.base == BasePoint::Zero) {
        const auto* power = std::get_if<PowerKernel>(&spec.kernel);
        if (power == nullptr) {
            throw DomainError("base point 0 is supported for the power kernel only");
        }
        return power_numeric(power->beta, alpha, t, cfg);
    }

    const double angle = spec.ray_angle;
    if (!(angle > -kPi && angle <= 0.0)) {
        throw DomainError("ray angle must lie in (-pi, 0]");
    }
    if (std::holds_alternative<PowerKernel>(spec.kernel)) {
        throw DomainError("the power kernel does not decay along a ray to -inf; use base point 0");
    }
    const int m = reduction_order(alpha);
    if (m > kMaxDerivativeOrder) {
        throw DomainError(fmt::format("derivative order reduction capped at m <= {} (Re(order) < {})",
                                      kMaxDerivativeOrder, kMaxDerivativeOrder));
    }
    const double lambda = kernel_decay_rate(spec.kernel, angle);
    if (!(lambda > 0.0)) {
        throw DomainError(fmt::format("kernel does not decay along the ray of angle {:.6g} (rate {:.4g})", angle,
                                      lambda));
    }

    const Complex dir = std::polar(1.0, angle);
    QuadratureConfig local = cfg;
    std::vector<double> breaks;
    double freq = 0.0;
    if (const auto* lk = std::get_if<LerchKernel>(&spec.kernel)) {
        if (t.imag() < 0.0) {
            throw DomainError("Lerch kernel needs Im(t) >= 0");
        }
        if (angle == 0.0 && t.imag() == 0.0) {
            throw DomainError("horizontal ray from real t runs through the kernel poles; offset t by i*eps");
        }
        if (t.imag() == 0.0 && t.real() == std::round(t.real())) {
            throw DomainError("t is a pole of the Lerch kernel");
        }
        freq = std::abs((dir * lk->x).real()) + std::abs(dir.real());
        // Graded panel edges towards the nearest pole when the ray starts close to one.
        const double pole_dist = std::abs(t - std::round(t.real()));
        for (double v = pole_dist; v < 1.0 && pole_dist < 0.25; v *= 2.0) breaks.push_back(v);
        if (angle == 0.0 && t.imag() < 0.5) {
            // Near-pole peaks sit above u = n, i.e. at v = Re(t) - n.
            const double frac = t.real() - std::floor(t.real());
            const double vmax = 1.5 * (60.0 + 4.0 * std::abs(alpha)) / lambda + 10.0;
            for (double v = frac; v <= vmax && breaks.size() < 4000000; v += 1.0) {
                if (v > 0.0) breaks.push_back(v);
            }
            local.oscillation_period_hint = std::min(cfg.oscillation_period_hint.value_or(1.0), 1.0);
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    } else if (const auto* ek = std::get_if<ExponentialKernel>(&spec.kernel)) {
        freq = std::abs((ek->k * dir).imag()) / kTwoPi;
    } else if (const auto* sk = std::get_if<ExponentialSumKernel>(&spec.kernel)) {
        for (const auto& [c, k] : sk->terms) freq = std::max(freq, std::abs((k * dir).imag()) / kTwoPi);
    }
    if (!local.oscillation_period_hint && freq > 0.5) {
        local.oscillation_period_hint = 1.0 / freq;
    }

    const Complex sigma = static_cast<double>(m) - alpha;
    const auto fm = derivative_evaluator(spec.kernel, m);
    const Estimate integral = integrate_halfline([&](double v) { return fm(t - v * dir); }, SingularWeight{sigma},
                                                 lambda, local, breaks);
    const Complex pref = std::exp(Complex(0.0, angle) * sigma) * rgamma(sigma);
    return {require_finite(pref * integral.value, "rl_numeric"), std::abs(pref) * integral.error};
}

}  // namespace lerchfrac
