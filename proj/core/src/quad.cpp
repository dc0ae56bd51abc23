#include "fraclab/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "fraclab/errors.hpp"

namespace fraclab::quad {

namespace {

constexpr double kPi = std::numbers::pi;

// Crossover between contour quadrature and the Watson expansion. Grows with p
// because the expansion terms carry Gamma(p + 2k + 1).
double asymptotic_crossover(double p) { return 14.0 + p; }

std::complex<double> gauss_power_phase_contour(double p, double w) {
    // z = r e^{i theta}, theta = pi/8: |integrand| = r^p exp(-w r sin(theta)
    // - r^2 cos(2 theta)/2), monotone decay for w >= 0.
    constexpr double theta = kPi / 8.0;
    const std::complex<double> eitheta = std::polar(1.0, theta);
    const std::complex<double> e2itheta = std::polar(1.0, 2.0 * theta);
    const std::complex<double> iw(0.0, w);

    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double r) -> std::complex<double> {
        const std::complex<double> expo = iw * eitheta * r - 0.5 * e2itheta * r * r;
        if (expo.real() < -745.0) return {0.0, 0.0}; // underflow guard
        return std::pow(r, p) * std::exp(expo);
    };
    const auto value = integrator.integrate(f, 1e-13);
    return std::polar(1.0, theta * (p + 1.0)) * value;
}

} // namespace

std::complex<double> gauss_power_phase_asymptotic(double p, double w) {
    const double aw = std::abs(w);
    std::complex<double> sum(0.0, 0.0);
    double prev_mag = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 12; ++k) {
        const double q = p + 2.0 * k + 1.0;
        const double mag =
            std::exp(std::lgamma(q) - k * std::numbers::ln2 - std::lgamma(k + 1.0) -
                     q * std::log(aw));
        if (mag > prev_mag) break; // divergent tail of the asymptotic series
        prev_mag = mag;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * mag * std::polar(1.0, kPi * q / 2.0);
    }
    return w >= 0.0 ? sum : std::conj(sum);
}

std::complex<double> gauss_power_phase(double p, double w) {
    if (!(p > -1.0))
        throw std::domain_error("gauss_power_phase: p must exceed -1");
    const double aw = std::abs(w);
    if (aw == 0.0) {
        // int_0^inf z^p e^{-z^2/2} dz = 2^{(p-1)/2} Gamma((p+1)/2)
        return {std::exp2(0.5 * (p - 1.0)) * std::tgamma(0.5 * (p + 1.0)), 0.0};
    }
    std::complex<double> value;
    if (aw >= asymptotic_crossover(p))
        value = gauss_power_phase_asymptotic(p, aw);
    else
        value = gauss_power_phase_contour(p, aw);
    return w >= 0.0 ? value : std::conj(value);
}

std::complex<double> oscillatory_power_tail(double a, double u, double R) {
    if (u == 0.0 || R <= 0.0 || a <= 0.0)
        throw std::domain_error("oscillatory_power_tail: need u != 0, R > 0, a > 0");
    const double au = std::abs(u);
    // v = R + i q / au, q in (0, inf):
    //   int_R^inf e^{i au v} v^{-1-a} dv = e^{i au R} (i/au) int_0^inf e^{-q}
    //                                      (R + i q/au)^{-1-a} dq
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double q) -> std::complex<double> {
        const std::complex<double> v(R, q / au);
        return std::exp(-q) * std::pow(v, -1.0 - a);
    };
    const auto integral = integrator.integrate(f, 1e-13);
    const std::complex<double> value =
        std::polar(1.0, au * R) * std::complex<double>(0.0, 1.0 / au) * integral;
    return u > 0.0 ? value : std::conj(value);
}

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on Legendre polynomials, symmetric pairs.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = wgt;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = wgt;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

double gauss_on(const std::function<double(double)>& f, double a, double b, int n) {
    const auto& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

std::complex<double> gauss_on_c(const std::function<std::complex<double>(double)>& f,
                                double a, double b, int n) {
    const auto& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::complex<double> sum(0.0, 0.0);
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

std::vector<double> graded_mesh(double floor, double x_max, double ratio) {
    if (!(x_max > 0.0) || !(ratio > 1.0) || !(floor > 0.0))
        throw std::domain_error("graded_mesh: need x_max > 0, floor > 0, ratio > 1");
    std::vector<double> breaks{0.0};
    double x = std::min(floor, x_max);
    while (x < x_max) {
        breaks.push_back(x);
        x *= ratio;
    }
    breaks.push_back(x_max);
    return breaks;
}

double integrate_graded(const std::function<double(double)>& f,
                        const std::vector<double>& breaks, int n_gauss) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        total += gauss_on(f, breaks[i], breaks[i + 1], n_gauss);
    return total;
}

AcceleratedLimit wynn_epsilon(std::span<const double> s) {
    const std::size_t n = s.size();
    if (n == 0) throw std::domain_error("wynn_epsilon: empty sequence");
    if (n == 1) return {s[0], std::numeric_limits<double>::infinity()};

    std::vector<double> prev2(n + 1, 0.0);           // eps_{-1}
    std::vector<double> prev(s.begin(), s.end());    // eps_0
    double best = s[n - 1];
    double prev_best = s[n - 2];
    for (std::size_t col = 1; col < n; ++col) {
        std::vector<double> cur(n - col);
        for (std::size_t i = 0; i + col < n; ++i) {
            const double diff = prev[i + 1] - prev[i];
            if (diff == 0.0) {
                cur[i] = prev2[i + 1]; // converged column
            } else {
                cur[i] = prev2[i + 1] + 1.0 / diff;
            }
        }
        if (col % 2 == 0 && !cur.empty()) {
            prev_best = best;
            best = cur.back();
        }
        prev2 = std::move(prev);
        prev = std::move(cur);
    }
    return {best, std::abs(best - prev_best)};
}

UniformCubicSpline::UniformCubicSpline(double x0, double h, std::vector<double> y)
    : x0_(x0), h_(h), n_(y.size()), y_(std::move(y)) {
    if (n_ < 3) throw std::domain_error("UniformCubicSpline: need >= 3 points");
    // Natural spline second derivatives: M_0 = M_{n-1} = 0 and
    //   M_{i-1} + 4 M_i + M_{i+1} = 6 (y_{i+1} - 2 y_i + y_{i-1}) / h^2.
    m_.assign(n_, 0.0);
    const std::size_t last = n_ - 2;
    std::vector<double> c(n_, 0.0), d(n_, 0.0);
    for (std::size_t i = 1; i <= last; ++i) {
        const double rhs = 6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / (h_ * h_);
        const double denom = (i == 1) ? 4.0 : 4.0 - c[i - 1];
        c[i] = 1.0 / denom;
        d[i] = (i == 1 ? rhs : rhs - d[i - 1]) / denom;
    }
    for (std::size_t i = last; i >= 1; --i) {
        m_[i] = d[i] - (i < last ? c[i] * m_[i + 1] : 0.0);
        if (i == 1) break;
    }
}

double UniformCubicSpline::operator()(double x) const {
    const double t = (x - x0_) / h_;
    if (t <= 0.0) return y_.front();
    const auto max_idx = static_cast<double>(n_ - 1);
    if (t >= max_idx) return y_.back();
    const auto i = static_cast<std::size_t>(t);
    const double u = t - static_cast<double>(i);   // in [0,1)
    const double v = 1.0 - u;
    // S = v y_i + u y_{i+1} + h^2/6 [ (v^3 - v) M_i + (u^3 - u) M_{i+1} ]
    return v * y_[i] + u * y_[i + 1] +
           (h_ * h_ / 6.0) * ((v * v * v - v) * m_[i] + (u * u * u - u) * m_[i + 1]);
}

GaussPowerPhaseProfile::GaussPowerPhaseProfile(double p, double table_step) : p_(p) {
    if (!(p > -1.0)) throw std::domain_error("GaussPowerPhaseProfile: p must exceed -1");
    w_switch_ = 14.0 + std::max(p, 0.0);
    // knots below 0 via parity: w ~ 0 interpolates from interior knots and
    // the natural-end error has decayed by the time it reaches w >= 0
    const int lead = 12;
    const double x0 = -lead * table_step;
    const auto n = static_cast<std::size_t>(std::ceil((w_switch_ - x0) / table_step)) + 2;
    std::vector<double> re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = x0 + static_cast<double>(i) * table_step;
        const auto m = gauss_power_phase(p, std::abs(w));
        re[i] = m.real();
        im[i] = (w >= 0.0 ? m.imag() : -m.imag()); // M_re even, M_im odd
    }
    re_ = UniformCubicSpline(x0, table_step, std::move(re));
    im_ = UniformCubicSpline(x0, table_step, std::move(im));
}

std::complex<double> GaussPowerPhaseProfile::operator()(double w) const {
    const double aw = std::abs(w);
    std::complex<double> m;
    if (aw >= w_switch_)
        m = gauss_power_phase_asymptotic(p_, aw);
    else
        m = {re_(aw), im_(aw)};
    return w >= 0.0 ? m : std::conj(m);
}

double double_factorial(int n) {
    if (n <= 0) return 1.0;
    double v = 1.0;
    for (int k = n; k > 1; k -= 2) v *= k;
    return v;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}

} // namespace fraclab::quad
