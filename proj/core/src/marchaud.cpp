#include "fraclab/marchaud.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "detail/fft.hpp"
#include "fraclab/errors.hpp"
#include "fraclab/quad.hpp"

namespace fraclab {

double marchaud_integral(const std::function<double(double)>& f, double alpha, double x,
                         Sign sign, const MarchaudTrunc& trunc) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("marchaud_integral: alpha must lie in (0,1)");
    const double shift = (sign == Sign::Plus) ? -1.0 : +1.0; // f(x -+ y)
    const double fx = f(x);

    // Core: int_0^split (f(x) - f(x -+ y)) y^{-1-alpha} dy with y = split e^{-q}.
    // Increments below y_c ~ 1e-9 are unresolvable against the rounding of a
    // double-precision f, yet y^{-1-alpha} keeps real mass there as alpha -> 1.
    // The core is therefore cut at two nearby floors and the missing
    // c y^{1-alpha} piece eliminated by Richardson extrapolation in the known
    // exponent.
    const double split = trunc.split;
    boost::math::quadrature::tanh_sinh<double> ts_core;
    auto core_to = [&](double y_floor) {
        const double q_max = std::log(split / y_floor);
        auto integrand = [&](double q) {
            const double y = split * std::exp(-q);
            const double diff = fx - f(x + shift * y);
            if (diff == 0.0) return 0.0;
            return diff * std::exp(alpha * q);
        };
        return std::pow(split, -alpha) * ts_core.integrate(integrand, 0.0, q_max, 1e-12);
    };
    const double y1 = 1e-9 * (1.0 + std::abs(x));
    const double y2 = y1 / 64.0;
    const double j1 = core_to(y1);
    const double j2 = core_to(y2);
    const double p1 = std::pow(y1, 1.0 - alpha), p2 = std::pow(y2, 1.0 - alpha);
    const double core = j1 + (j2 - j1) / (p1 - p2) * p1;

    // Tail: int_split^inf (fx - f(x -+ y)) y^{-1-alpha} dy
    //     = fx split^{-alpha}/alpha - int_split^inf f(x -+ y) y^{-1-alpha} dy.
    // Block partial sums of the second integral converge absolutely for
    // decaying f, alternately for oscillatory f (Wynn epsilon accelerates
    // those), and with a K^{-alpha} power-law remainder when f has a tail
    // limit; the known exponent lets a Richardson step S_k R_k^alpha
    // eliminate that remainder exactly before Wynn runs.
    std::vector<double> partial, edges;
    partial.reserve(trunc.max_blocks);
    double running = 0.0;
    int small_streak = 0;
    bool absolutely_converged = false;
    for (int k = 0; k < trunc.max_blocks; ++k) {
        const double a = split + k * trunc.block;
        const double b = a + trunc.block;
        const double blk = quad::gauss_on(
            [&](double y) { return f(x + shift * y) * std::pow(y, -1.0 - alpha); }, a, b, 16);
        running += blk;
        partial.push_back(running);
        edges.push_back(b);
        small_streak = std::abs(blk) < 0.01 * trunc.tol ? small_streak + 1 : 0;
        if (small_streak >= 3) {
            absolutely_converged = true;
            break;
        }
    }
    double tail_f;
    if (absolutely_converged) {
        tail_f = running;
    } else {
        const auto plain = quad::wynn_epsilon(partial);
        std::vector<double> richardson(partial.size() - 1);
        for (std::size_t k = 0; k + 1 < partial.size(); ++k) {
            const double pa = std::pow(edges[k], alpha);
            const double pb = std::pow(edges[k + 1], alpha);
            richardson[k] = (partial[k + 1] * pb - partial[k] * pa) / (pb - pa);
        }
        const auto rich = quad::wynn_epsilon(richardson);
        const auto& best = rich.error_estimate < plain.error_estimate ? rich : plain;
        if (!(best.error_estimate <= trunc.tol) || !std::isfinite(best.value))
            throw AccuracyError("marchaud_integral: tail did not converge",
                                best.error_estimate, trunc.tol);
        tail_f = best.value;
    }
    const double tail = fx * std::pow(split, -alpha) / alpha - tail_f;

    return alpha / std::tgamma(1.0 - alpha) * (core + tail);
}

std::vector<std::complex<double>> marchaud_spectral(const std::vector<double>& samples,
                                                    double grid_step, double alpha,
                                                    Sign sign, const SpectralOptions& opt) {
    if (alpha < 0.0) throw std::domain_error("marchaud_spectral: alpha must be >= 0");
    if (!(grid_step > 0.0)) throw std::domain_error("marchaud_spectral: grid_step must be > 0");
    const std::size_t n = samples.size();
    if (n < 4) throw std::domain_error("marchaud_spectral: need at least 4 samples");

    if (!opt.assume_periodic) {
        double fmax = 0.0;
        for (double v : samples) fmax = std::max(fmax, std::abs(v));
        const double edge = std::max(std::abs(samples.front()), std::abs(samples.back()));
        if (fmax > 0.0 && edge > opt.decay_tol * fmax)
            throw PreconditionError(
                "marchaud_spectral: samples do not decay at the grid boundary "
                "(pass assume_periodic for windows holding whole periods)");
    }

    const bool fractional = MultiIndex::frac_part(alpha) != 0.0;
    const std::size_t pad =
        (opt.assume_periodic || !fractional) ? 1 : std::max<std::size_t>(opt.pad_factor, 1);
    const std::size_t big_n = n * pad;

    std::vector<std::complex<double>> buf(big_n, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) buf[i] = samples[i];
    auto spectrum = detail::fft(buf, -1);
    const double f_zero = spectrum[0].real() * grid_step; // continuous F(0)

    const double du = 2.0 * std::numbers::pi / (grid_step * static_cast<double>(big_n));
    for (std::size_t k = 0; k < big_n; ++k) {
        const auto kk = static_cast<long>(k);
        const long freq =
            (kk <= static_cast<long>(big_n) / 2) ? kk : kk - static_cast<long>(big_n);
        const double u = du * static_cast<double>(freq);
        std::complex<double> mult;
        if (2 * k == big_n) {
            // Nyquist bin of an even-length grid: keep only the real part of
            // the multiplier so a real signal stays conjugate-symmetric.
            mult = {std::pow(std::abs(u), alpha) *
                        std::cos(std::numbers::pi * alpha * 0.5),
                    0.0};
        } else {
            mult = signed_power(u, alpha, sign);
        }
        spectrum[k] *= mult;
    }
    auto out_big = detail::fft(spectrum, +1);
    const double scale = 1.0 / static_cast<double>(big_n);
    std::vector<std::complex<double>> out(out_big.begin(), out_big.begin() + n);
    for (auto& v : out) v *= scale;

    if (!opt.assume_periodic && fractional) {
        // Navot endpoint defect of the u = 0 kink: the node sum overshoots
        // the integral by zeta(-alpha) du^{1+alpha} g(0) per side, so the
        // leading (x-independent) correction is subtracted.
        const double corr = -boost::math::zeta(-alpha) *
                            std::cos(std::numbers::pi * alpha * 0.5) *
                            std::pow(du, 1.0 + alpha) * f_zero / std::numbers::pi;
        for (auto& v : out) v += corr;
    }
    return out;
}

} // namespace fraclab
