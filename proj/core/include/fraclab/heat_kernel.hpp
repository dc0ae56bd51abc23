#pragma once

#include <optional>
#include <span>

#include "fraclab/multi_index.hpp"
#include "fraclab/quad.hpp"

namespace fraclab {

/// One-dimensional factor of the alpha-th regularized delta derivative:
///   (1/pi) int_0^inf y^alpha cos(y x +- pi alpha/2) e^{-eps y^2/2} dy
///     = eps^{-(alpha+1)/2} g(alpha, x/sqrt(eps), sign)
/// with g(alpha, w, s) = (1/pi) Re[ e^{i s pi alpha/2} M(alpha, w) ] and
/// M = quad::gauss_power_phase. The value is always real. Evaluated by
/// quadrature for every alpha (integer orders are cross-checked against the
/// Hermite closed form in tests, not special-cased here).
double frac_heat_kernel_1d(double alpha, double eps, double x, Sign sign);

/// d-dimensional kernel: product of 1D factors.
double frac_heat_kernel_nd(const MultiIndex& alpha, double eps,
                           std::span<const double> x, Sign sign);

/// k-th derivative of the 1D Gaussian density p_eps at x, via probabilists'
/// Hermite polynomials. Oracle for integer orders.
double gaussian_derivative_1d(int k, double eps, double x);

/// Reusable evaluator for a fixed order alpha. Fractional orders build a
/// cubic-spline table of M(alpha, w) on [0, w_switch] once (the tail uses
/// the Watson expansion); integer orders go through the Hermite closed form.
/// Evaluation is O(1) and safe to share across threads after construction.
class HeatKernelProfile {
public:
    explicit HeatKernelProfile(double alpha, double table_step = 0.01);

    double alpha() const noexcept { return alpha_; }

    /// Kernel value at (eps, x) for the given sign.
    double operator()(double eps, double x, Sign sign) const;

    /// g(alpha, w, sign): the scale-free profile.
    double profile(double w, Sign sign) const;

private:
    double alpha_;
    bool integer_order_ = false;
    int k_ = 0;             // order when integer
    double cos_phi_ = 1.0;  // cos(pi alpha / 2)
    double sin_phi_ = 0.0;
    std::optional<quad::GaussPowerPhaseProfile> m_;
};

} // namespace fraclab
