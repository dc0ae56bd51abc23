#include "fraclab/frac_checks.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fraclab/errors.hpp"
#include "fraclab/multi_index.hpp"
#include "fraclab/quad.hpp"
#include "fraclab/rng.hpp"

namespace fraclab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double verify_lemma_contour_identity(double alpha, double u) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("verify_lemma_contour_identity: alpha in (0,1)");
    if (u == 0.0) return 0.0; // both sides vanish

    const double au = std::abs(u);
    // Finite part on [0, R]: panels of one half-period each; the first panel
    // carries the v^{1-alpha} endpoint behavior, handled by tanh_sinh.
    const double half_period = kPi / au;
    const int n_panels = 48;
    const double R = n_panels * half_period;

    // Stable forms near v = 0: 1 - cos(w) = 2 sin^2(w/2) written through
    // sinc so v^{-1-alpha} never meets a spurious zero (avoids 0 * inf at the
    // tanh-sinh endpoint), and sin(w) v^{-1-alpha} = au sinc(w) v^{-alpha}.
    auto sinc = [](double w) { return std::abs(w) < 1e-8 ? 1.0 : std::sin(w) / w; };
    auto re_integrand = [&](double v) {
        const double half = 0.5 * au * v;
        const double s = sinc(half);
        return 0.5 * au * au * s * s * std::pow(v, 1.0 - alpha);
    };
    auto im_integrand = [&](double v) {
        return au * sinc(au * v) * std::pow(v, -alpha);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    double i_re = ts.integrate(re_integrand, 0.0, half_period, 1e-12);
    double i_im = ts.integrate(im_integrand, 0.0, half_period, 1e-12);
    for (int k = 1; k < n_panels; ++k) {
        const double a = k * half_period, b = a + half_period;
        i_re += quad::gauss_on(
            [&](double v) { return (1.0 - std::cos(au * v)) * std::pow(v, -1.0 - alpha); }, a,
            b, 16);
        i_im += quad::gauss_on(
            [&](double v) { return std::sin(au * v) * std::pow(v, -1.0 - alpha); }, a, b, 16);
    }
    // Tails: int_R^inf v^{-1-alpha} dv = R^{-alpha}/alpha exactly, and the
    // oscillatory remainder through the rotated contour.
    const auto osc = quad::oscillatory_power_tail(alpha, au, R);
    i_re += std::pow(R, -alpha) / alpha - osc.real();
    i_im += osc.imag();

    const double sgn_u = u > 0.0 ? 1.0 : -1.0;
    const std::complex<double> lhs =
        alpha / std::tgamma(1.0 - alpha) * std::complex<double>(i_re, sgn_u * i_im);
    const std::complex<double> rhs = std::polar(std::pow(au, alpha), kPi * alpha * 0.5 * sgn_u);
    return std::abs(lhs - rhs);
}

DiffBoundEstimate verify_signed_power_diff_bound(double alpha, std::size_t n_samples,
                                                 std::uint64_t seed) {
    if (alpha < 0.0) throw std::domain_error("verify_signed_power_diff_bound: alpha >= 0");
    const double bar = MultiIndex::floor_part(alpha);
    const double tilde = MultiIndex::frac_part(alpha);
    const double star = MultiIndex::star(alpha);
    const double y2_exp = bar - (tilde == 0.0 ? std::min(bar, 1.0) : 0.0);

    auto max_ratio = [&](std::size_t n, std::uint64_t s) {
        rng::Stream stream(seed, s);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double y1 = stream.next_normal();
            const double y2 = stream.next_normal();
            const double lhs = std::abs(signed_power(y1 + y2, alpha, Sign::Plus) -
                                        signed_power(y2, alpha, Sign::Plus));
            const double den = std::pow(std::abs(y2), y2_exp) * std::pow(std::abs(y1), star) +
                               std::pow(std::abs(y1), alpha);
            if (den > 0.0) worst = std::max(worst, lhs / den);
        }
        return worst;
    };

    DiffBoundEstimate out;
    out.c_hat = max_ratio(n_samples, 1);
    out.c_hat_doubled = std::max(out.c_hat, max_ratio(n_samples, 2)); // superset max
    if (alpha > 0.0 && (!std::isfinite(out.c_hat_doubled) ||
                        out.c_hat_doubled > 2.0 * std::max(out.c_hat, 1e-12)))
        throw NumericalError("verify_signed_power_diff_bound: ratio diverges under refinement");
    out.stable = out.c_hat_doubled <= 1.05 * std::max(out.c_hat, 1e-300) ||
                 (out.c_hat == 0.0 && out.c_hat_doubled == 0.0);
    return out;
}

double verify_gaussian_shift_identity(double a, double x, int m) {
    if (!(a > 0.0)) throw std::domain_error("verify_gaussian_shift_identity: a > 0");
    if (m < 0) throw std::domain_error("verify_gaussian_shift_identity: m >= 0");

    const double L = std::sqrt((80.0 + 6.0 * m) / a) + std::sqrt(static_cast<double>(m) / a);
    const int n_panels = 8 + static_cast<int>(std::abs(x) * L / kPi);

    auto int_panels = [&](auto&& f) {
        std::complex<double> total(0.0, 0.0);
        const double step = 2.0 * L / n_panels;
        for (int k = 0; k < n_panels; ++k)
            total += quad::gauss_on_c(f, -L + k * step, -L + (k + 1) * step, 20);
        return total;
    };

    const std::complex<double> i_unit(0.0, 1.0);
    const auto lhs = int_panels([&](double t) {
        return std::pow(t, m) * std::exp(-0.5 * a * t * t) * std::exp(i_unit * x * t);
    });
    const auto rhs_int = int_panels([&](double t) {
        std::complex<double> base(t, x / a);
        std::complex<double> pw(1.0, 0.0);
        for (int k = 0; k < m; ++k) pw *= base;
        return pw * std::exp(-0.5 * a * t * t);
    });
    const auto rhs = rhs_int * std::exp(-0.5 * x * x / a);
    return std::abs(lhs - rhs);
}

} // namespace fraclab
