#include "fraclab/j_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fraclab/errors.hpp"
#include "fraclab/quad.hpp"

namespace fraclab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

struct JKernelEvaluator::Impl {
    // radial profile M(2 alpha + 1, .), built lazily only when x != 0
    std::unique_ptr<quad::GaussPowerPhaseProfile> radial;
    double radial_at_zero = 0.0;
};

JKernelEvaluator::JKernelEvaluator(JVariant variant, double alpha, double x, Sign sign)
    : variant_(variant), alpha_(alpha), x_(x), sign_(sign), impl_(std::make_unique<Impl>()) {
    if (alpha < 0.0) throw std::domain_error("j_kernel: alpha must be >= 0");
    impl_->radial_at_zero = quad::gauss_power_phase(2.0 * alpha + 1.0, 0.0).real();
    if (x != 0.0 && variant != JVariant::JTilde)
        impl_->radial = std::make_unique<quad::GaussPowerPhaseProfile>(2.0 * alpha + 1.0);
}

JKernelEvaluator::~JKernelEvaluator() = default;
JKernelEvaluator::JKernelEvaluator(JKernelEvaluator&&) noexcept = default;
JKernelEvaluator& JKernelEvaluator::operator=(JKernelEvaluator&&) noexcept = default;

JKernelValue JKernelEvaluator::evaluate(const TwoTimeStats& st) const {
    JKernelValue out;
    out.variant = variant_;
    out.alpha = alpha_;
    out.x = x_;
    out.t = st.t;
    out.s = st.s;
    out.eps = st.eps;

    const double pref = st.G / std::pow(st.D, alpha_ + 0.5);

    if (variant_ == JVariant::JTilde) {
        const double gauss_moment =
            std::exp2(alpha_ + 0.5) * std::tgamma(alpha_ + 0.5); // int |u|^{2a} e^{-u^2/2}
        const double phase_mass = std::sqrt(kTwoPi) * std::exp(-0.5 * st.G * st.G * x_ * x_);
        out.value = {pref * gauss_moment * phase_mass, 0.0};
        out.quad_error = 0.0;
        return out;
    }

    const double sqrt_delta = std::sqrt(st.Delta);
    const double rho_c = (st.C - st.B) / sqrt_delta;
    const double rho_a = variant_ == JVariant::J ? (st.A - st.B) / sqrt_delta : -rho_c;

    // Angular kinks: zeros of g1 = -cos + rho_a sin and g2 = cos + rho_c sin
    // inside (0, pi).
    double kinks[2] = {std::atan2(1.0, rho_a), std::atan2(1.0, -rho_c)};
    if (kinks[0] > kinks[1]) std::swap(kinks[0], kinks[1]);

    const double s_fac = static_cast<double>(static_cast<int>(sign_));
    const double gx = st.G * x_;
    auto integrand = [&](double theta) -> std::complex<double> {
        const double c = std::cos(theta), s = std::sin(theta);
        const double g1 = -c + rho_a * s;
        const double g2 = c + rho_c * s;
        const double mod = std::pow(std::abs(g1 * g2), alpha_);
        const double sgn_sum = (g1 > 0 ? 1.0 : (g1 < 0 ? -1.0 : 0.0)) +
                               (g2 > 0 ? 1.0 : (g2 < 0 ? -1.0 : 0.0));
        const std::complex<double> phase = std::polar(mod, s_fac * kPi * alpha_ * 0.5 * sgn_sum);
        const std::complex<double> radial =
            gx == 0.0 ? std::complex<double>(impl_->radial_at_zero, 0.0)
                      : (*impl_->radial)(gx * s);
        return phase * radial;
    };

    boost::math::quadrature::tanh_sinh<double> ts;
    std::complex<double> total(0.0, 0.0);
    double err_total = 0.0;
    const double edges[4] = {0.0, kinks[0], kinks[1], kPi};
    for (int arc = 0; arc < 3; ++arc) {
        const double a = edges[arc], b = edges[arc + 1];
        if (!(b > a + 1e-15)) continue;
        double err = 0.0;
        total += ts.integrate(integrand, a, b, 1e-10, &err);
        err_total += err;
    }
    // the theta and theta+pi half-circles are complex conjugates
    out.value = {pref * 2.0 * total.real(), 0.0};
    out.quad_error = pref * 2.0 * err_total;
    return out;
}

JKernelValue j_kernel(JVariant variant, double alpha, double x, double t, double s,
                      double eps, const ProcessKind& kind, Sign sign) {
    if (!(eps > 0.0)) throw std::domain_error("j_kernel: eps must be > 0");
    JKernelEvaluator ev(variant, alpha, x, sign);
    return ev.evaluate(two_time_stats(kind, t, s, eps));
}

double j_closed_form_integer(int alpha, const TwoTimeStats& st) {
    if (alpha < 0) throw std::domain_error("j_closed_form_integer: alpha must be >= 0");
    double sum = 0.0;
    for (int l = 0; l <= alpha; l += 2) {
        const double c_kl = quad::double_factorial(l - 1) * quad::binomial(alpha, l) *
                            quad::double_factorial(2 * alpha - l - 1);
        sum += c_kl * std::pow(st.B, alpha - l) /
               std::pow(st.Delta, 0.5 * (2.0 * alpha - l + 1.0));
    }
    return kTwoPi * sum;
}

} // namespace fraclab
