#include "lerchfrac/lerch_ref.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "lerchfrac/errors.hpp"

namespace lerchfrac {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// B_2, B_4, ..., B_40
constexpr std::array<double, 20> kBernoulliEven = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
};

// Neumaier-compensated complex sum.
struct CompensatedSum {
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
    double abs_total = 0.0;

    static void add1(double& s, double& c, double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v)) {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    void add(Complex v) {
        add1(re, cre, v.real());
        add1(im, cim, v.imag());
        abs_total += std::abs(v);
    }
    [[nodiscard]] Complex value() const { return {re + cre, im + cim}; }
};

struct Tail {
    Complex correction;
    double bound = kInf;
};

class SeriesTerms {
public:
    explicit SeriesTerms(const EvaluationPoint& p)
        : p_(p),
          sigma_(p.s.real()),
          integer_t_(p.t.imag() == 0.0 && p.t.real() == std::round(p.t.real())) {}

    bool integer_t() const { return integer_t_; }

    Complex f(double u) const { return std::exp(-p_.s * std::log(u + p_.x)); }

    // z^n with the phase reduced mod 1 before exponentiating, so that large n
    // keep full accuracy.
    Complex zpow(double n) const {
        if (integer_t_) return 1.0;
        const double a = p_.t.real();
        const double prod = a * n;
        const double low = std::fma(a, n, -prod);
        const double phase = (prod - std::floor(prod)) + low;
        return std::polar(std::exp(-kTwoPi * p_.t.imag() * n), kTwoPi * phase);
    }

    Complex z() const { return zpow(1.0); }

    double envelope(double u) const { return std::exp(std::abs(p_.s.imag()) * std::abs(std::arg(u + p_.x))); }

    Tail geometric(double n) const {
        Tail out;
        const double b = p_.t.imag();
        if (!(b > 0.0)) return out;
        const double c = sigma_ >= 0.0 ? p_.x.real() : std::abs(p_.x);
        const double rho = std::exp(-kTwoPi * b);
        const double q = rho * std::max(1.0, std::pow((n + 1.0 + c) / (n + c), -sigma_));
        if (!(q < 1.0)) return out;
        const double log_bound = std::abs(p_.s.imag()) * std::abs(std::arg(n + p_.x)) - sigma_ * std::log(n + c) -
                                 kTwoPi * b * n - std::log1p(-q);
        out.bound = std::exp(log_bound);
        out.correction = 0.0;
        return out;
    }

    Tail summation_by_parts(double n) const {
        Tail best;
        if (integer_t_) return best;
        const Complex z1 = z();
        const Complex one_minus_z = 1.0 - z1;
        if (std::abs(one_minus_z) < 1e-8) return best;
        const Complex w = z1 / one_minus_z;
        const double aw = std::abs(w);
        const Complex lead = zpow(n) / one_minus_z;
        const double zn_abs = std::abs(zpow(n));
        const double rx = p_.x.real();
        const double e_n = envelope(n);

        constexpr int kMaxK = 12;
        std::array<Complex, kMaxK + 1> diff{};
        double fmax = 0.0;
        for (int j = 0; j <= kMaxK; ++j) {
            diff[j] = f(n + j);
            fmax = std::max(fmax, std::abs(diff[j]));
        }
        // After pass k, diff[0] = Delta^k f(n).
        std::array<Complex, kMaxK + 1> deltas{};
        deltas[0] = diff[0];
        for (int k = 1; k <= kMaxK; ++k) {
            for (int j = 0; j + k <= kMaxK; ++j) diff[j] = diff[j + 1] - diff[j];
            deltas[k] = diff[0];
        }

        Complex partial = 0.0;
        double rounding = 0.0;
        Complex rising = 1.0;  // (s)_K
        double wk = 1.0;
        Complex wpow = 1.0;
        for (int k = 0; k < kMaxK; ++k) {
            partial += wpow * deltas[k];
            rounding += wk * std::ldexp(fmax, k) * kEps * 4.0;
            wpow *= w;
            wk *= aw;
            rising *= p_.s + static_cast<double>(k);
            const int K = k + 1;
            if (!(sigma_ + K - 1.0 > 0.0)) continue;
            const double base = n + rx;
            const double rem = wk * std::abs(rising) * e_n * zn_abs *
                               (std::pow(base, -sigma_ - K) + std::pow(base, 1.0 - sigma_ - K) / (sigma_ + K - 1.0));
            const double total = rem + rounding * std::abs(lead);
            if (total < best.bound) {
                best.bound = total;
                best.correction = lead * partial;
            }
        }
        return best;
    }

    Tail euler_maclaurin(double n) const {
        Tail best;
        if (!integer_t_ || !(sigma_ > 1.0)) return best;
        const Complex s = p_.s;
        const Complex base = n + p_.x;
        const Complex fn = f(n);
        Complex acc = std::exp((1.0 - s) * std::log(base)) / (s - 1.0) + 0.5 * fn;
        const double e_n = envelope(n);
        const double rb = n + p_.x.real();
        Complex rising = s;  // (s)_{2k-1}
        Complex power = fn / base;  // (n+x)^{-s-1}
        double factorial = 2.0;  // (2k)!
        double two_pi_pow = kTwoPi * kTwoPi;
        for (int k = 1; k <= static_cast<int>(kBernoulliEven.size()); ++k) {
            acc += kBernoulliEven[k - 1] / factorial * rising * power;
            // advance to (s)_{2k}
            const Complex rising_even = rising * (s + (2.0 * k - 1.0));
            const double rem = 4.0 * std::abs(rising_even) / two_pi_pow * e_n * std::pow(rb, 1.0 - sigma_ - 2.0 * k) /
                               (sigma_ + 2.0 * k - 1.0);
            const double total = rem + 8.0 * kEps * std::abs(acc);
            if (total < best.bound) {
                best.bound = total;
                best.correction = acc;
            }
            rising = rising_even * (s + 2.0 * k);
            power /= base * base;
            factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
            two_pi_pow *= kTwoPi * kTwoPi;
        }
        return best;
    }

private:
    EvaluationPoint p_;
    double sigma_;
    bool integer_t_;
};

}  // namespace

bool EvaluationPoint::series_domain() const noexcept {
    if (!(x.real() > 0.0)) return false;
    if (t.imag() > 0.0) return true;
    return t.imag() >= 0.0 && s.real() > 1.0;
}

bool EvaluationPoint::theorem1_domain() const noexcept {
    return t.imag() > 0.0 && !(x.imag() == 0.0 && x.real() <= 0.0);
}

EvaluationPoint EvaluationPoint::conjugate_reflected() const noexcept {
    return {-std::conj(t), std::conj(x), std::conj(s)};
}

Estimate lerch_series(const EvaluationPoint& p, double tol, long long term_cap) {
    if (!(tol > 0.0)) throw DomainError("series tolerance must be positive");
    if (!p.series_domain()) {
        throw DomainError("series needs Re(x) > 0 and either Im(t) > 0, or Im(t) >= 0 with Re(s) > 1");
    }
    const SeriesTerms terms(p);
    CompensatedSum sum;
    long long n = 0;
    long long checkpoint = 16;
    Complex best_value = 0.0;
    double best_bound = kInf;
    while (true) {
        for (; n < checkpoint; ++n) sum.add(terms.f(static_cast<double>(n)) * terms.zpow(static_cast<double>(n)));
        const double nd = static_cast<double>(n);
        Tail tail = terms.geometric(nd);
        for (const Tail& other : {terms.summation_by_parts(nd), terms.euler_maclaurin(nd)}) {
            if (other.bound < tail.bound) tail = other;
        }
        const Complex value = sum.value() + tail.correction;
        const double error = tail.bound + 4.0 * kEps * sum.abs_total;
        if (error < best_bound) {
            best_bound = error;
            best_value = value;
        }
        // Rounding in the head is a floor more terms cannot lower; only the
        // truncation part is held to tol.
        if (tail.bound <= tol * std::abs(value)) return {value, error};
        if (checkpoint >= term_cap) {
            throw NonconvergenceError(
                fmt::format("series needs more than {} terms for relative tolerance {:.3g}", term_cap, tol),
                best_value, best_bound);
        }
        checkpoint = std::min(term_cap, 2 * checkpoint);
    }
}

Estimate hurwitz(Complex x, Complex s, double tol, long long term_cap) {
    if (!(s.real() > 1.0) || !(x.real() > 0.0)) throw DomainError("hurwitz needs Re(s) > 1 and Re(x) > 0");
    return lerch_series({0.0, x, s}, tol, term_cap);
}

Estimate riemann_series(Complex s, double tol, long long term_cap) {
    if (!(s.real() > 1.0)) throw DomainError("riemann series needs Re(s) > 1");
    return lerch_series({0.0, 1.0, s}, tol, term_cap);
}

double conjugation_residual(const EvaluationPoint& p, const LerchEvaluator& evaluator) {
    const Complex lhs = std::conj(evaluator(p));
    const Complex rhs = evaluator(p.conjugate_reflected());
    return std::abs(lhs - rhs);
}

}  // namespace lerchfrac
