#include "fraclab/moment.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "fraclab/errors.hpp"
#include "fraclab/quad.hpp"

namespace fraclab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double floor_scale(double eps, double hurst, double t_max, double frac) {
    const double s = eps > 0.0 ? std::pow(eps, 0.5 / hurst) : t_max * 1e-6;
    return std::clamp(frac * s, t_max * 1e-9, t_max);
}

/// Iterated integral over {0 < s < t < T} of f(t, s), graded toward the
/// diagonal u = t - s = 0 and toward s = 0, upper u-limit capped per s node.
/// inner_cap limits u additionally (wedge integrals); <= 0 means no cap.
double integrate_simplex(double T, double eps, double hurst,
                         const std::function<double(double, double)>& f,
                         const MomentOptions& opts, double outer_max, double inner_cap_mult) {
    const double fl = floor_scale(eps, hurst, T, opts.floor_frac);
    const auto v_breaks = quad::graded_mesh(fl, outer_max, opts.mesh_ratio);
    auto inner = [&](double v) {
        double u_max = T - v;
        if (inner_cap_mult > 0.0) u_max = std::min(u_max, inner_cap_mult * v);
        if (!(u_max > 0.0)) return 0.0;
        const auto u_breaks = quad::graded_mesh(std::min(fl, u_max), u_max, opts.mesh_ratio);
        return quad::integrate_graded([&](double u) { return f(v + u, v); }, u_breaks,
                                      opts.gauss_points);
    };
    return quad::integrate_graded(inner, v_breaks, opts.gauss_points);
}

void check_dims(const MultiIndex& alpha, std::span<const double> x) {
    if (alpha.dim() > 3)
        throw PreconditionError("second_moment: d <= 3 (quadrature cost)");
    if (x.size() != alpha.dim())
        throw std::domain_error("second_moment: x and alpha dimensions differ");
}

bool all_zero(std::span<const double> x) {
    for (double v : x)
        if (v != 0.0) return false;
    return true;
}

} // namespace

double second_moment(const MultiIndex& alpha, std::span<const double> x, double T,
                     double eps, const ProcessKind& kind, Sign sign,
                     const MomentOptions& opts) {
    check_dims(alpha, x);
    if (!(eps > 0.0)) throw std::domain_error("second_moment: eps must be > 0");
    if (!(T > 0.0)) throw std::domain_error("second_moment: T must be > 0");

    const std::size_t d = alpha.dim();
    const double pref = 2.0 / std::pow(kTwoPi, 2.0 * static_cast<double>(d));

    if (opts.j_route == MomentOptions::JRoute::ClosedFormInteger) {
        for (std::size_t l = 0; l < d; ++l)
            if (!MultiIndex::is_integer(alpha[l]))
                throw PreconditionError("second_moment: closed-form route needs integer alpha");
        if (!all_zero(x))
            throw PreconditionError("second_moment: closed-form route needs x = 0");
        auto f = [&](double t, double s) {
            const auto st = two_time_stats(kind, t, s, eps);
            double prod = 1.0;
            for (std::size_t l = 0; l < d; ++l)
                prod *= j_closed_form_integer(static_cast<int>(alpha[l]), st);
            return prod;
        };
        return pref * integrate_simplex(T, eps, kind.hurst(), f, opts, T, 0.0);
    }

    std::vector<JKernelEvaluator> evals;
    evals.reserve(d);
    for (std::size_t l = 0; l < d; ++l)
        evals.emplace_back(JVariant::J, alpha[l], x[l], sign);
    auto f = [&](double t, double s) {
        const auto st = two_time_stats(kind, t, s, eps);
        double prod = 1.0;
        for (const auto& ev : evals) prod *= ev.evaluate(st).value.real();
        return prod;
    };
    return pref * integrate_simplex(T, eps, kind.hurst(), f, opts, T, 0.0);
}

double i_hat_moment(const MultiIndex& alpha, double T, double eps, const ProcessKind& kind,
                    Sign sign, const MomentOptions& opts) {
    const std::size_t d = alpha.dim();
    const double pref = 2.0 / std::pow(kTwoPi, 2.0 * static_cast<double>(d));
    std::vector<JKernelEvaluator> evals;
    evals.reserve(d);
    for (std::size_t l = 0; l < d; ++l)
        evals.emplace_back(JVariant::JHat, alpha[l], 0.0, sign);
    auto f = [&](double t, double s) {
        const auto st = two_time_stats(kind, t, s, eps);
        double prod = 1.0;
        for (const auto& ev : evals) prod *= ev.evaluate(st).value.real();
        return prod;
    };
    return pref * integrate_simplex(T, eps, kind.hurst(), f, opts, T, 0.0);
}

double i_tilde_moment(const MultiIndex& alpha, std::span<const double> x, double T,
                      double eps, const ProcessKind& kind, Sign sign,
                      const MomentOptions& opts) {
    check_dims(alpha, x);
    const std::size_t d = alpha.dim();
    const double pref = 2.0 / std::pow(kTwoPi, 2.0 * static_cast<double>(d));
    std::vector<JKernelEvaluator> evals;
    evals.reserve(d);
    for (std::size_t l = 0; l < d; ++l)
        evals.emplace_back(JVariant::JTilde, alpha[l], x[l], sign);
    auto f = [&](double t, double s) {
        const auto st = two_time_stats(kind, t, s, eps);
        double prod = 1.0;
        for (const auto& ev : evals) prod *= ev.evaluate(st).value.real();
        return prod;
    };
    return pref * integrate_simplex(T, eps, kind.hurst(), f, opts, T, 0.0);
}

double part2_wedge_channel(const MultiIndex& alpha, double T, double eps,
                           const ProcessKind& kind, const SlndConstants& consts,
                           const MomentOptions& opts) {
    const std::size_t d = alpha.dim();
    const double pref = 2.0 / std::pow(kTwoPi, 2.0 * static_cast<double>(d));
    const double hurst = kind.hurst();
    const double wedge = std::pow(2.0 * consts.kappa / consts.big_k, 1.0 / hurst);
    const double t_tilde = T / (1.0 + wedge);

    // Decoupled fractional factors do not depend on (t, s) except through
    // A(t), C(s); precompute the Gaussian-moment constants.
    std::vector<double> frac_const(d, 0.0);
    std::vector<bool> is_int(d, false);
    for (std::size_t l = 0; l < d; ++l) {
        if (MultiIndex::is_integer(alpha[l])) {
            is_int[l] = true;
        } else {
            const double a = alpha[l];
            const double moment = 2.0 * std::cos(std::numbers::pi * a * 0.5) *
                                  std::exp2(0.5 * (a - 1.0)) * std::tgamma(0.5 * (a + 1.0));
            frac_const[l] = moment * moment;
        }
    }

    auto f = [&](double t, double s) {
        const auto st = two_time_stats(kind, t, s, eps);
        double prod = 1.0;
        for (std::size_t l = 0; l < d; ++l) {
            if (is_int[l])
                prod *= j_closed_form_integer(static_cast<int>(alpha[l]), st);
            else
                prod *= frac_const[l] * std::pow(st.A * st.C, -0.5 * (alpha[l] + 1.0));
        }
        return prod;
    };
    return pref * integrate_simplex(T, eps, hurst, f, opts, t_tilde, wedge);
}

RateFit rate_fit_part1(const MultiIndex& alpha, const ProcessKind& kind, double T,
                       const std::vector<double>& eps_schedule, const MomentOptions& opts) {
    const double hurst = kind.hurst();
    const auto d = static_cast<double>(alpha.dim());
    if (hurst * d > 1.0 + 1e-12)
        throw PreconditionError("rate_fit_part1: requires Hd <= 1 (Theorem case I)");
    if (hurst * (2.0 * alpha.total() + d) < 1.0 - 1e-12)
        throw PreconditionError(
            "rate_fit_part1: H(2|alpha|+d) >= 1 required (existence regime otherwise)");

    std::vector<double> x(alpha.dim(), 0.0);
    std::vector<double> values;
    values.reserve(eps_schedule.size());
    for (double eps : eps_schedule)
        values.push_back(second_moment(alpha, x, T, eps, kind, Sign::Plus, opts));
    const double predicted = 0.5 / hurst - alpha.total() - 0.5 * d;
    return fit_rate(eps_schedule, values, predicted);
}

Part2Fit rate_fit_part2(const MultiIndex& alpha, const ProcessKind& kind, double T,
                        const std::vector<double>& eps_schedule, const SlndConstants& consts,
                        const MomentOptions& opts) {
    const double hurst = kind.hurst();
    const auto d = static_cast<double>(alpha.dim());
    if (!(hurst * d > 1.0))
        throw PreconditionError("rate_fit_part2: requires Hd > 1 (Theorem cases II/III)");
    const double int_sum = alpha.integer_component_sum();
    const bool odd_sum = std::fmod(int_sum, 2.0) == 1.0;
    if (odd_sum) {
        // statement (3) needs E[X_t X_s] >= 0; scan a sample
        for (double t = 0.05; t < T; t += T / 23.0)
            for (double s = t / 7.0; s < t; s += t / 7.0)
                if (cov(kind, t, s) < 0.0)
                    throw PreconditionError(
                        "rate_fit_part2: odd integer-order sum needs nonnegative covariance");
    }

    std::vector<double> values;
    values.reserve(eps_schedule.size());
    for (double eps : eps_schedule)
        values.push_back(part2_wedge_channel(alpha, T, eps, kind, consts, opts));

    const double denom = int_sum + alpha.total() + d;
    const double displayed = (2.0 + 2.0 * hurst * int_sum) / denom - 2.0 * hurst;
    const double via_lemma = (2.0 + 2.0 * hurst * int_sum) / (2.0 * hurst) - denom;

    Part2Fit out;
    out.fit = fit_rate(eps_schedule, values, displayed);
    out.fit.predicted_exponent_alt = via_lemma;
    out.fit.has_alt_prediction = true;
    // one-sided contract: growth at least as fast as the displayed rate
    out.lower_bound_ok = out.fit.slope <= displayed + 0.10;
    return out;
}

Part3Fit rate_fit_part3(const MultiIndex& alpha, std::span<const double> x,
                        const ProcessKind& kind, double T,
                        const std::vector<double>& eps_schedule, bool exploratory,
                        const MomentOptions& opts) {
    check_dims(alpha, x);
    const double hurst = kind.hurst();
    const auto d = static_cast<double>(alpha.dim());
    if (all_zero(x)) throw PreconditionError("rate_fit_part3: needs x != 0");
    bool anchored = false;
    for (std::size_t l = 0; l < alpha.dim(); ++l)
        if (MultiIndex::is_integer(alpha[l]) && x[l] != 0.0) anchored = true;
    if (!anchored && !exploratory)
        throw PreconditionError(
            "rate_fit_part3: no integer alpha_l at a nonzero coordinate; the all-fractional "
            "case at x != 0 is open (contour argument unavailable) - run exploratory mode "
            "for values without a pass/fail contract");
    if (!exploratory && hurst * (2.0 * alpha.total() + d) < 1.0 - 1e-12)
        throw PreconditionError("rate_fit_part3: H(2|alpha|+d) >= 1 required");

    Part3Fit out;
    out.exploratory = !anchored;
    std::vector<double> tilde_vals, corrections;
    for (double eps : eps_schedule) {
        const double it = i_tilde_moment(alpha, x, T, eps, kind, Sign::Plus, opts);
        const double full = second_moment(alpha, x, T, eps, kind, Sign::Plus, opts);
        tilde_vals.push_back(it);
        corrections.push_back(std::abs(full - it));
    }
    const double predicted = 0.5 / hurst - alpha.total() - 0.5 * d;
    out.fit = fit_rate(eps_schedule, tilde_vals, predicted);
    out.correction = corrections;

    // Correction gap exponent per the remainder bound: predicted + beta with
    // beta = (1/4) min{ min alpha*_l > 0, 1/H - d, 2|alpha| + d - 1/H }.
    double min_star = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < alpha.dim(); ++l) {
        const double st = MultiIndex::star(alpha[l]);
        if (st > 0.0) min_star = std::min(min_star, st);
    }
    const double beta =
        0.25 * std::min({min_star, 1.0 / hurst - d, 2.0 * alpha.total() + d - 1.0 / hurst});
    out.predicted_correction_exponent = predicted + beta;
    bool positive = true;
    for (double c : corrections) positive = positive && c > 0.0;
    out.correction_slope =
        positive ? fit_loglog(eps_schedule, corrections).slope
                 : std::numeric_limits<double>::quiet_NaN();
    return out;
}

} // namespace fraclab
