#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace fraclab::quad {

/// M(p, w) = int_0^inf z^p exp(-z^2/2) exp(i w z) dz  for p > -1.
///
/// Evaluated by rotating the contour onto the ray z = r e^{i pi/8}, where the
/// integrand decays like exp(-w r sin(pi/8) - r^2 cos(pi/4)/2) for w >= 0, so
/// no oscillation survives. For large |w| the Watson expansion
///   sum_k (-1)^k / (2^k k!) Gamma(p+2k+1) e^{i pi (p+2k+1)/2} w^{-(p+2k+1)}
/// takes over. w < 0 by conjugation; w = 0 in closed form.
std::complex<double> gauss_power_phase(double p, double w);

/// The large-|w| expansion alone (terms chosen adaptively); |w| must exceed
/// the crossover used by gauss_power_phase or accuracy degrades.
std::complex<double> gauss_power_phase_asymptotic(double p, double w);

/// int_R^inf e^{i u v} v^{-1-a} dv for u != 0, R > 0, a > 0, computed on the
/// rotated ray v = R + i q/|u| (Jordan decay), so the quadrature sees
/// exp(-q) damping instead of oscillation.
std::complex<double> oscillatory_power_tail(double a, double u, double R);

/// Gauss-Legendre nodes/weights on [-1, 1], cached per n.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

/// int_a^b f dx with a single n-point Gauss-Legendre rule.
double gauss_on(const std::function<double(double)>& f, double a, double b, int n);
std::complex<double> gauss_on_c(const std::function<std::complex<double>(double)>& f,
                                double a, double b, int n);

/// Geometric breakpoints {0, floor, floor*ratio, ..., x_max} used to resolve
/// integrands with an eps-mollified power singularity at 0. floor is clamped
/// to x_max.
std::vector<double> graded_mesh(double floor, double x_max, double ratio);

/// Composite Gauss over a graded mesh.
double integrate_graded(const std::function<double(double)>& f,
                        const std::vector<double>& breaks, int n_gauss);

/// Wynn epsilon-algorithm estimate of lim s_n from partial sums; returns the
/// best diagonal entry and a crude stability estimate.
struct AcceleratedLimit {
    double value = 0;
    double error_estimate = 0;
};
AcceleratedLimit wynn_epsilon(std::span<const double> partial_sums);

/// Natural cubic spline on a uniform grid, evaluated with O(1) lookup.
class UniformCubicSpline {
public:
    UniformCubicSpline() = default;
    UniformCubicSpline(double x0, double h, std::vector<double> y);

    double operator()(double x) const;
    double x_min() const noexcept { return x0_; }
    double x_max() const noexcept { return x0_ + h_ * (static_cast<double>(n_) - 1); }

private:
    double x0_ = 0, h_ = 1;
    std::size_t n_ = 0;
    std::vector<double> y_;
    std::vector<double> m_; // second derivatives at knots
};

/// Spline-cached M(p, .) = gauss_power_phase(p, .) for a fixed p, O(1) per
/// evaluation. The table covers [0, crossover]; larger |w| uses the Watson
/// expansion and w < 0 conjugation. Safe to share across threads once built.
class GaussPowerPhaseProfile {
public:
    explicit GaussPowerPhaseProfile(double p, double table_step = 0.01);
    double p() const noexcept { return p_; }
    std::complex<double> operator()(double w) const;

private:
    double p_ = 0;
    double w_switch_ = 0;
    UniformCubicSpline re_, im_;
};

double double_factorial(int n); // (-1)!! = 0!! = 1
double binomial(int n, int k);

} // namespace fraclab::quad
