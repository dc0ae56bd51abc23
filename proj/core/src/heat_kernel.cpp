#include "fraclab/heat_kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fraclab {

namespace {
constexpr double kPi = std::numbers::pi;

double profile_from_m(double m_re, double m_im, double w, double cos_phi, double sin_phi,
                      Sign sign) {
    // g = (1/pi) Re[ e^{i s phi} M(alpha, w) ], M(alpha, -w) = conj M(alpha, w).
    const double s = static_cast<int>(sign);
    const double odd = w >= 0.0 ? m_im : -m_im;
    return (cos_phi * m_re - s * sin_phi * odd) / kPi;
}
} // namespace

double frac_heat_kernel_1d(double alpha, double eps, double x, Sign sign) {
    if (alpha < 0.0) throw std::domain_error("frac_heat_kernel_1d: alpha must be >= 0");
    if (!(eps > 0.0)) throw std::domain_error("frac_heat_kernel_1d: eps must be > 0");
    const double w = x / std::sqrt(eps);
    const auto m = quad::gauss_power_phase(alpha, std::abs(w));
    const double phi = kPi * alpha * 0.5;
    const double prof =
        profile_from_m(m.real(), m.imag(), w, std::cos(phi), std::sin(phi), sign);
    return std::pow(eps, -0.5 * (alpha + 1.0)) * prof;
}

double frac_heat_kernel_nd(const MultiIndex& alpha, double eps,
                           std::span<const double> x, Sign sign) {
    if (x.size() != alpha.dim())
        throw std::domain_error("frac_heat_kernel_nd: dimension mismatch");
    double prod = 1.0;
    for (std::size_t l = 0; l < alpha.dim(); ++l)
        prod *= frac_heat_kernel_1d(alpha[l], eps, x[l], sign);
    return prod;
}

double gaussian_derivative_1d(int k, double eps, double x) {
    if (k < 0) throw std::domain_error("gaussian_derivative_1d: k must be >= 0");
    if (!(eps > 0.0)) throw std::domain_error("gaussian_derivative_1d: eps must be > 0");
    const double u = x / std::sqrt(eps);
    // probabilists' Hermite polynomials He_k
    double he0 = 1.0, he1 = u;
    double he = (k == 0) ? he0 : he1;
    for (int j = 2; j <= k; ++j) {
        const double next = u * he1 - (j - 1) * he0;
        he0 = he1;
        he1 = next;
        he = next;
    }
    if (k == 0) he = he0;
    const double phi = std::exp(-0.5 * u * u) / std::sqrt(2.0 * kPi);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(eps, -0.5 * (k + 1.0)) * he * phi;
}

HeatKernelProfile::HeatKernelProfile(double alpha, double table_step) : alpha_(alpha) {
    if (alpha < 0.0) throw std::domain_error("HeatKernelProfile: alpha must be >= 0");
    const double phi = kPi * alpha * 0.5;
    cos_phi_ = std::cos(phi);
    sin_phi_ = std::sin(phi);

    if (MultiIndex::is_integer(alpha) && alpha <= 20.0) {
        integer_order_ = true;
        k_ = static_cast<int>(alpha);
        return;
    }
    m_.emplace(alpha, table_step);
}

double HeatKernelProfile::profile(double w, Sign sign) const {
    if (integer_order_) {
        // g(k, w, +) = (-1)^k He_k(w) phi(w); sign Minus flips odd orders.
        const double v = gaussian_derivative_1d(k_, 1.0, w);
        return (sign == Sign::Plus || k_ % 2 == 0) ? v : -v;
    }
    const auto m = (*m_)(std::abs(w));
    return profile_from_m(m.real(), m.imag(), w, cos_phi_, sin_phi_, sign);
}

double HeatKernelProfile::operator()(double eps, double x, Sign sign) const {
    if (!(eps > 0.0)) throw std::domain_error("HeatKernelProfile: eps must be > 0");
    return std::pow(eps, -0.5 * (alpha_ + 1.0)) * profile(x / std::sqrt(eps), sign);
}

} // namespace fraclab
