#include "fraclab/moment_checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fraclab/errors.hpp"
#include "fraclab/quad.hpp"
#include "fraclab/rng.hpp"

namespace fraclab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double schur_first(const Eigen::MatrixXd& sigma) {
    const auto n = sigma.rows();
    if (n == 1) return sigma(0, 0);
    const Eigen::MatrixXd s22 = sigma.block(1, 1, n - 1, n - 1);
    const Eigen::VectorXd s12 = sigma.block(1, 0, n - 1, 1);
    return sigma(0, 0) - s12.dot(s22.ldlt().solve(s12));
}

/// int g(v/s1) e^{-v^2/2} dv, kink-split at 0.
double scaled_gauss_integral(const std::function<double(double)>& g, double s1) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double L = 14.0;
    auto f = [&](double v) { return g(v / s1) * std::exp(-0.5 * v * v); };
    return ts.integrate(f, -L, 0.0, 1e-12) + ts.integrate(f, 0.0, L, 1e-12);
}
} // namespace

IdentityCheck verify_cd1982_quadrature(const Eigen::MatrixXd& sigma,
                                       const std::function<double(double)>& g, double tol) {
    const auto n = sigma.rows();
    if (n < 1 || n > 2)
        throw PreconditionError("verify_cd1982_quadrature: quadrature route covers n <= 2");
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw PreconditionError("verify_cd1982_quadrature: covariance must be positive definite");

    const double det = sigma.determinant();
    const double s1 = std::sqrt(schur_first(sigma));

    IdentityCheck out;
    boost::math::quadrature::tanh_sinh<double> ts;
    if (n == 1) {
        const double a = sigma(0, 0);
        auto f = [&](double v) { return g(v) * std::exp(-0.5 * a * v * v); };
        const double L = 14.0 / std::sqrt(a);
        out.lhs = ts.integrate(f, -L, 0.0, 1e-12) + ts.integrate(f, 0.0, L, 1e-12);
    } else {
        // exp(-v^T Sigma v / 2): the weight's covariance is Sigma^{-1}
        const Eigen::MatrixXd prec_inv = sigma.inverse();
        const double l1 = 14.0 * std::sqrt(prec_inv(0, 0));
        const double l2 = 14.0 * std::sqrt(prec_inv(1, 1));
        auto inner = [&](double v1) {
            auto f2 = [&](double v2) {
                const double q = sigma(0, 0) * v1 * v1 + 2.0 * sigma(0, 1) * v1 * v2 +
                                 sigma(1, 1) * v2 * v2;
                return std::exp(-0.5 * q);
            };
            return g(v1) * (ts.integrate(f2, -l2, 0.0, 1e-12) + ts.integrate(f2, 0.0, l2, 1e-12));
        };
        boost::math::quadrature::tanh_sinh<double> ts_outer;
        out.lhs = ts_outer.integrate(inner, -l1, 0.0, 1e-11) +
                  ts_outer.integrate(inner, 0.0, l1, 1e-11);
    }
    out.rhs = std::pow(kTwoPi, 0.5 * (static_cast<double>(n) - 1.0)) / std::sqrt(det) *
              scaled_gauss_integral(g, s1);
    out.residual = std::abs(out.lhs - out.rhs);
    out.pass = out.residual <= tol;
    return out;
}

IdentityCheck verify_cd1982_mc(const Eigen::MatrixXd& sigma,
                               const std::function<double(double)>& g,
                               std::size_t n_samples, std::uint64_t seed, double tol) {
    const auto n = sigma.rows();
    if (n < 1 || n > 4) throw PreconditionError("verify_cd1982_mc: n <= 4");
    Eigen::LLT<Eigen::MatrixXd> llt(sigma.inverse());
    if (llt.info() != Eigen::Success)
        throw PreconditionError("verify_cd1982_mc: covariance must be positive definite");
    const Eigen::MatrixXd chol = llt.matrixL();
    const double det = sigma.determinant();

    // LHS = (2 pi)^{n/2} det^{-1/2} E[g(v_1)], v ~ N(0, Sigma^{-1})
    rng::Stream stream(seed, 0xcd1982);
    double sum = 0.0, sum2 = 0.0;
    Eigen::VectorXd z(n);
    for (std::size_t i = 0; i < n_samples; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) z(j) = stream.next_normal();
        const double v1 = (chol * z)(0);
        const double gv = g(v1);
        sum += gv;
        sum2 += gv * gv;
    }
    const double mean = sum / static_cast<double>(n_samples);
    const double var = sum2 / static_cast<double>(n_samples) - mean * mean;
    const double scale = std::pow(kTwoPi, 0.5 * static_cast<double>(n)) / std::sqrt(det);

    IdentityCheck out;
    out.lhs = scale * mean;
    out.mc_se = scale * std::sqrt(std::max(var, 0.0) / static_cast<double>(n_samples));
    const double s1 = std::sqrt(schur_first(sigma));
    out.rhs = std::pow(kTwoPi, 0.5 * (static_cast<double>(n) - 1.0)) / std::sqrt(det) *
              scaled_gauss_integral(g, s1);
    out.residual = std::abs(out.lhs - out.rhs);
    out.pass = out.residual <= std::max(tol, 4.0 * out.mc_se);
    return out;
}

AsymptoteBandReport verify_lmaxiao(double beta, double gamma, double p,
                                   const std::vector<double>& a_schedule) {
    if (!(beta > 0.0 && gamma > 0.0 && p > 0.0))
        throw std::domain_error("verify_lmaxiao: beta, gamma, p must be > 0");
    AsymptoteBandReport rep;
    const double bg = beta * gamma;
    rep.regime = bg > p ? +1 : (bg == p ? 0 : -1);

    boost::math::quadrature::tanh_sinh<double> ts;
    for (double a : a_schedule) {
        if (!(a > 0.0 && a < 1.0))
            throw std::domain_error("verify_lmaxiao: A must lie in (0,1)");
        const double integral = ts.integrate(
            [&](double r) { return std::pow(r, p - 1.0) / std::pow(a + std::pow(r, gamma), beta); },
            0.0, 1.0, 1e-11);
        double asym;
        if (rep.regime > 0)
            asym = std::pow(a, p / gamma - beta);
        else if (rep.regime == 0)
            asym = std::log1p(std::pow(a, -1.0 / gamma));
        else
            asym = 1.0;
        rep.a_values.push_back(a);
        rep.integrals.push_back(integral);
        rep.asymptotes.push_back(asym);
        rep.ratios.push_back(integral / asym);
    }
    rep.ratio_min = *std::min_element(rep.ratios.begin(), rep.ratios.end());
    rep.ratio_max = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    rep.pass = rep.ratio_min > 0.0 && rep.ratio_max / rep.ratio_min < 10.0;
    return rep;
}

SimplexBoundReport verify_lmahx2020(const std::vector<double>& a, double T, double h,
                                    std::size_t n_samples, std::uint64_t seed) {
    const std::size_t m = a.size();
    if (m == 0 || m > 4) throw PreconditionError("verify_lmahx2020: m in [1,4]");
    for (double ai : a)
        if (!(ai > 0.0 && ai < 1.0))
            throw std::domain_error("verify_lmahx2020: a_i must lie in (0,1)");
    if (!(T > 0.0 && h > 0.0)) throw std::domain_error("verify_lmahx2020: T, h > 0");

    double sum_a = 0.0, bound = 1.0;
    for (double ai : a) {
        sum_a += ai;
        bound *= std::tgamma(1.0 - ai);
    }
    bound *= std::pow(h, static_cast<double>(m) - sum_a) /
             std::tgamma(static_cast<double>(m) + 1.0 - sum_a);

    SimplexBoundReport rep;
    rep.bound = bound;
    if (m == 1) {
        rep.estimate = (std::pow(T + h, 1.0 - a[0]) - std::pow(T, 1.0 - a[0])) / (1.0 - a[0]);
        rep.se = 0.0;
        rep.pass = rep.estimate <= bound * (1.0 + 1e-12);
        return rep;
    }

    // Importance sampling: u_1 with density c u^{-a_1} on (T, T+h), u_i with
    // density c u^{-a_i} on (0, h) for i >= 2; the integrand becomes the
    // product of normalizers times the domain indicator.
    const double w1 =
        (std::pow(T + h, 1.0 - a[0]) - std::pow(T, 1.0 - a[0])) / (1.0 - a[0]);
    double weight = w1;
    for (std::size_t i = 1; i < m; ++i) weight *= std::pow(h, 1.0 - a[i]) / (1.0 - a[i]);

    rng::Stream stream(seed, 0x2020);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double quant =
            std::pow(T, 1.0 - a[0]) + stream.next_uniform() * (1.0 - a[0]) * w1;
        double total = std::pow(quant, 1.0 / (1.0 - a[0]));
        for (std::size_t i = 1; i < m; ++i)
            total += h * std::pow(stream.next_uniform(), 1.0 / (1.0 - a[i]));
        if (total < T + h) ++hits;
    }
    const double phat = static_cast<double>(hits) / static_cast<double>(n_samples);
    rep.estimate = weight * phat;
    rep.se = weight * std::sqrt(std::max(phat * (1.0 - phat), 0.0) /
                                static_cast<double>(n_samples));
    rep.pass = rep.estimate <= bound + 3.0 * rep.se;
    return rep;
}

double verify_gaussian_moment_closed_form(int k, double a, double b, double c, double eps) {
    if (k < 0 || k > 3) throw PreconditionError("verify_gaussian_moment_closed_form: k <= 3");
    if (!(a > 0.0 && c > 0.0))
        throw std::domain_error("verify_gaussian_moment_closed_form: a, c must be > 0");
    const double delta = (a + eps) * (c + eps) - b * b;
    if (!(delta > 0.0))
        throw std::domain_error("verify_gaussian_moment_closed_form: (a+eps)(c+eps)-b^2 <= 0");

    // closed form
    double rhs = 0.0;
    for (int l = 0; l <= k; l += 2) {
        const double ckl = quad::double_factorial(l - 1) * quad::binomial(k, l) *
                           quad::double_factorial(2 * k - l - 1);
        rhs += ckl * std::pow(b, k - l) / std::pow(delta, 0.5 * (2.0 * k - l + 1.0));
    }

    // quadrature of the smooth Gaussian-polynomial integrand; the box size
    // comes from the smallest eigenvalue of the 2x2 quadratic form
    const double ae = a + eps, ce = c + eps;
    const double lmin = 0.5 * (ae + ce - std::sqrt((ae - ce) * (ae - ce) + 4.0 * b * b));
    const double L = 14.0 / std::sqrt(lmin);
    const int panels = 6, npts = 20;
    const double step = 2.0 * L / panels;
    double lhs = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double y2a = -L + i * step;
        for (int j = 0; j < panels; ++j) {
            const double y1a = -L + j * step;
            lhs += quad::gauss_on(
                [&](double y2) {
                    return quad::gauss_on(
                        [&](double y1) {
                            const double q = (a + eps) * y2 * y2 + 2.0 * b * y1 * y2 +
                                             (c + eps) * y1 * y1;
                            return std::pow(y1 * y2, k) * std::exp(-0.5 * q);
                        },
                        y1a, y1a + step, npts);
                },
                y2a, y2a + step, npts);
        }
    }
    lhs *= (k % 2 == 0 ? 1.0 : -1.0) / kTwoPi;
    return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

} // namespace fraclab
