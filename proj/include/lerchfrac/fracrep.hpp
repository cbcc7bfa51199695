#pragma once

// L(t, x, s) as a differintegral of the Lerch kernel
//   L(t, x, s) = (2 pi)^s exp(i pi (s/2 - 2 t x)) D^{-s}[e^{2 pi i u x} / (1 - e^{2 pi i u})](t)
// with base point -inf, and the companion representation of L(t, x, 1-s)
// through kernels evaluated at the real points x and -x.
//
// Ray choice for the kernel parameter x: the horizontal ray when Im x < 0 and
// t sits well above the real axis, otherwise the ray of angle -(pi + arg x)/2.
// Both stay in the upper half plane, where the kernel is analytic, and the
// kernel decays along the tilted one for every x off (-inf, 0]. The tilt
// reaches real x and Im x > 0, where the horizontal integral diverges, and
// lifts the contour off the poles at the integers when t is (nearly) real.

#include <vector>

#include "lerchfrac/differintegral.hpp"
#include "lerchfrac/lerch_ref.hpp"
#include "lerchfrac/quadrature.hpp"

namespace lerchfrac {

enum class ExtrapolationMode { Richardson, None };

struct LimitContourConfig {
    double eps0 = 1e-2;
    int levels = 6;
    double ratio = 2.0;
    ExtrapolationMode extrapolation = ExtrapolationMode::Richardson;

    /// Throws DomainError unless eps0 > 0, levels >= 2, ratio > 1.
    void validate() const;
};

struct LimitEstimate {
    Complex value;
    double error = 0.0;
    /// Raw values at each offset, largest offset first.
    std::vector<Complex> samples;
    /// Most refined extrapolant of each Richardson column.
    std::vector<Complex> extrapolants;
    /// Below this, differences between extrapolants are quadrature noise.
    double noise_floor = 0.0;
};

/// Below this Im t the horizontal ray runs too close to the kernel poles.
inline constexpr double kHorizontalMinHeight = 0.05;

/// Ray angle used for the Lerch kernel with parameter x, evaluated at t.
double lerch_ray_angle(Complex x, Complex t);

/// (2 pi)^s exp(i pi (s/2 - 2 t x))
Complex theorem1_prefactor(Complex t, Complex x, Complex s);

/// (2 pi i)^s e^{-2 pi i t x}, the same factor written through principal powers.
Complex theorem1_prefactor_power_form(Complex t, Complex x, Complex s);

/// D^{-s} of the Lerch kernel at t (no prefactor).
Estimate lerch_differintegral(Complex t, Complex x, Complex s, const QuadratureConfig& cfg);

/// Needs Im t > 0, x off (-inf, 0] and Re s > -8 (derivative orders up to 8).
Estimate lerch_theorem1(const EvaluationPoint& p, const QuadratureConfig& cfg);

/// Real t, not an integer: lerch_theorem1 at t + i eps_k, eps_k = eps0/ratio^k,
/// extrapolated to eps = 0. Throws ExtrapolationUnstable if the extrapolants
/// stop contracting above the noise floor.
LimitEstimate lerch_theorem1_real_t(double t, Complex x, Complex s, const LimitContourConfig& lcfg,
                                    const QuadratureConfig& cfg);

/// zeta(s) from the kernel 1/(e^{-2 pi i u} - 1) at u = 1/2. Not at s = 1 nor
/// where 2^{1-s} = 1.
Estimate riemann_halfpoint(Complex s, const LimitContourConfig& lcfg, const QuadratureConfig& cfg);

/// zeta(s) as the t -> 0+ limit of L(t, 1, s), t_k = eps0/ratio^k. Re(s) > 1 only.
LimitEstimate riemann_limit(Complex s, const LimitContourConfig& lcfg, const QuadratureConfig& cfg);

/// L(t, x, 1-s) for Im t > 0, 0 < x < 1, s off the gamma poles.
Estimate lerch_theorem2(Complex t, double x, Complex s, const LimitContourConfig& lcfg, const QuadratureConfig& cfg);

/// L(t, x, 1-s) for real t in (0, 1): lerch_theorem2 at t + i eta_k, extrapolated
/// to eta = 0 on the schedule of `outer`. The first offset is capped at
/// min(t, 1 - t) / 4.
LimitEstimate lerch_theorem2_real_t(double t, double x, Complex s, const LimitContourConfig& outer,
                                    const LimitContourConfig& inner, const QuadratureConfig& cfg);

/// Right-hand side of the functional equation for L(t, x, 1-s), from the series:
/// Gamma(s)/(2 pi)^s [e^{i pi (s/2 - 2 t x)} L(-x, t, s) + e^{-i pi (s/2 - 2 x (1-t))} L(x, 1-t, s)].
Estimate functional_equation_rhs(double t, double x, Complex s, double tol);

struct InterchangeTestConfig {
    /// Disc |t - c| <= R in the t-plane.
    Complex disc_center;
    double disc_radius = 0.0;
    double delta = 0.5;
    std::vector<int> partial_terms{0, 5, 10, 20, 40};

    /// Throws DomainError unless c - R is off [0, inf), delta > 0, the disc
    /// stays in Im t > 0 and partial_terms is non-empty and non-negative.
    void validate() const;
};

struct InterchangeResult {
    std::vector<int> partial_terms;
    /// Quadrature of the partial-sum kernel, and the sum of termwise closed forms.
    std::vector<Complex> quadrature_values;
    std::vector<Complex> closed_values;
    /// The differintegral of the full kernel.
    Complex full_value;
    /// |quadrature of the partial sum - sum of closed forms|, at the point t.
    std::vector<double> residuals;
    /// Allowed residual for each N.
    std::vector<double> tolerances;
    /// |sum of closed forms - full differintegral|
    std::vector<double> tail_gaps;
    /// Geometric bound on tail_gaps plus the differintegral's error.
    std::vector<double> tail_bounds;
    /// sup of |sum_{n>N} e^{2 pi i u (n+x)}| |u|^{delta + Re s} over samples of
    /// the ray from c - R to -inf; must decrease to 0.
    std::vector<double> ray_tail_sup;
    bool passed = false;
};

/// Termwise versus whole-sum fractional integration of sum_n e^{2 pi i u (n+x)}.
/// Needs p.t inside the disc, Re s > 1 and Im x < 0.
InterchangeResult interchange_check(const InterchangeTestConfig& icfg, const EvaluationPoint& p,
                                    const QuadratureConfig& cfg);

}  // namespace lerchfrac
