#pragma once

// Riemann-Liouville differintegrals with base point -inf (along a ray) or 0.
//
// For base -inf the contour is the ray u = t - v e^{i angle}, v in [0, inf),
// with arg(t - u) = angle. angle = 0 is the horizontal ray running left from
// t; negative angles tilt the ray into the upper half plane. Tilting does not
// change the value wherever the horizontal integral converges, and extends it
// analytically where it does not.
//
// Orders with Re(alpha) < 0 are evaluated as the integral
//   D^alpha f(t) = e^{-i angle alpha} / Gamma(-alpha) int_0^inf v^{-alpha-1} f(t - v e^{i angle}) dv.
// Orders with Re(alpha) >= 0 move the m = floor(Re alpha) + 1 derivatives
// under the integral sign onto the kernel:
//   D^alpha f(t) = e^{i angle (m-alpha)} / Gamma(m-alpha) int_0^inf v^{m-alpha-1} f^(m)(t - v e^{i angle}) dv.

#include <utility>
#include <variant>
#include <vector>

#include "lerchfrac/quadrature.hpp"
#include "lerchfrac/types.hpp"

namespace lerchfrac {

/// e^{k u}
struct ExponentialKernel {
    Complex k;
};

/// u^beta on the principal branch
struct PowerKernel {
    Complex beta;
};

/// e^{2 pi i u x} / (1 - e^{2 pi i u})
struct LerchKernel {
    Complex x;
};

/// sum_j c_j e^{k_j u}; terms are (c_j, k_j).
struct ExponentialSumKernel {
    std::vector<std::pair<Complex, Complex>> terms;
};

using KernelDescriptor = std::variant<ExponentialKernel, PowerKernel, LerchKernel, ExponentialSumKernel>;

enum class BasePoint { MinusInfinity, Zero };

/// Highest derivative order the kernel reduction will use.
inline constexpr int kMaxDerivativeOrder = 8;

struct DifferintegralSpec {
    Complex order;
    BasePoint base = BasePoint::MinusInfinity;
    KernelDescriptor kernel;
    /// arg(t - u) along the ray for base -inf; must lie in (-pi, 0].
    double ray_angle = 0.0;
};

/// m-th derivative of the kernel at u (m = 0 gives the value).
Complex kernel_derivative(const KernelDescriptor& kernel, int m, Complex u);

/// k^alpha e^{k t}. Throws BranchCutError for k on (-inf, 0].
Complex rl_exp_closed(Complex k, Complex alpha, Complex t);

/// Gamma(beta+1)/Gamma(beta-alpha+1) t^{beta-alpha}, base point 0.
/// Throws DomainError for Re(beta) <= -1, PoleError when beta-alpha+1 is a
/// gamma pole, BranchCutError for t on (-inf, 0].
Complex rl_power_closed(Complex beta, Complex alpha, Complex t);

/// Numerical differintegral. Throws DomainError when the kernel does not decay
/// along the requested ray (or the ray meets a kernel pole), plus any
/// quadrature error.
Estimate rl_numeric(const DifferintegralSpec& spec, Complex t, const QuadratureConfig& cfg);

/// Decay rate of the kernel's envelope along the ray of the given angle;
/// non-positive means the ray integral does not converge.
double kernel_decay_rate(const KernelDescriptor& kernel, double ray_angle);

}  // namespace lerchfrac
