#include "fraclab/local_time.hpp"

#include <cmath>
#include <stdexcept>

#include "fraclab/errors.hpp"
#include "fraclab/parallel.hpp"

namespace fraclab {

LocalTimeEvaluator::LocalTimeEvaluator(const PathSet& paths, MultiIndex alpha, Sign sign)
    : paths_(&paths), alpha_(std::move(alpha)), sign_(sign) {
    if (alpha_.dim() != paths.d)
        throw std::domain_error("LocalTimeEvaluator: alpha dimension != path dimension");
    if (!paths.grid.starts_at_zero())
        throw PreconditionError("LocalTimeEvaluator: path grid must cover [0, T] from 0");
    profiles_.reserve(alpha_.dim());
    for (std::size_t l = 0; l < alpha_.dim(); ++l)
        profiles_.emplace_back(alpha_[l]);
}

LtEstimate LocalTimeEvaluator::lt_eps(std::size_t path_id, double eps,
                                      std::span<const double> x, double T) const {
    if (!(eps > 0.0)) throw std::domain_error("lt_eps: eps must be > 0");
    if (x.size() != alpha_.dim()) throw std::domain_error("lt_eps: x dimension mismatch");
    const auto& grid = paths_->grid;
    if (T > grid.t_max() * (1.0 + 1e-12))
        throw std::domain_error("lt_eps: T beyond the path grid");

    // trapezoid over grid points up to T; a final partial step holds the last
    // kernel value so L(T) is continuous in T between grid points
    double acc = 0.0;
    double prev_t = 0.0, prev_f = 0.0;
    bool have_prev = false;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid[k];
        if (t > T) {
            if (have_prev && T > prev_t) acc += prev_f * (T - prev_t);
            have_prev = false;
            break;
        }
        double f = 1.0;
        for (std::size_t l = 0; l < alpha_.dim(); ++l)
            f *= profiles_[l](eps, paths_->value(path_id, k, l) + x[l], sign_);
        if (have_prev) acc += 0.5 * (f + prev_f) * (t - prev_t);
        prev_t = t;
        prev_f = f;
        have_prev = true;
    }
    if (have_prev && T > prev_t) acc += prev_f * (T - prev_t);
    LtEstimate est;
    est.value = acc;
    est.alpha = alpha_.components();
    est.sign = sign_;
    est.eps = eps;
    est.x.assign(x.begin(), x.end());
    est.T = T;
    est.path_id = path_id;
    return est;
}

std::vector<double> LocalTimeEvaluator::lt_all_paths(double eps, std::span<const double> x,
                                                     double T) const {
    std::vector<double> out(paths_->n_paths, 0.0);
    for_each_chunk(paths_->n_paths, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) out[p] = lt_eps(p, eps, x, T).value;
    });
    return out;
}

LtEstimate lt_eps(const PathSet& paths, std::size_t path_id, const MultiIndex& alpha,
                  Sign sign, double eps, std::span<const double> x, double T) {
    return LocalTimeEvaluator(paths, alpha, sign).lt_eps(path_id, eps, x, T);
}

MomentStats moment_stats(const std::vector<double>& values) {
    const auto n = static_cast<double>(values.size());
    if (values.empty()) return {};
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) sq[i] = values[i] * values[i];
    MomentStats st;
    st.mean = pairwise_sum(values) / n;
    st.second_moment = pairwise_sum(sq) / n;
    double var1 = 0.0, var2 = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        var1 += (values[i] - st.mean) * (values[i] - st.mean);
        var2 += (sq[i] - st.second_moment) * (sq[i] - st.second_moment);
    }
    st.mean_se = std::sqrt(var1 / n) / std::sqrt(n);
    st.second_se = std::sqrt(var2 / n) / std::sqrt(n);
    return st;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Stabilizing: return "stabilizing";
        case Verdict::Diverging: return "diverging";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

ConvergenceDiag eps_convergence(const PathSet& paths, const MultiIndex& alpha, Sign sign,
                                std::span<const double> x, double T,
                                const std::vector<double>& eps_schedule,
                                const ConvergenceOptions& opts) {
    for (std::size_t i = 1; i < eps_schedule.size(); ++i)
        if (!(eps_schedule[i] < eps_schedule[i - 1]))
            throw std::domain_error("eps_convergence: schedule must be strictly decreasing");

    ConvergenceDiag diag;
    diag.eps_schedule = eps_schedule;
    if (eps_schedule.size() < 2) {
        diag.verdict = Verdict::Inconclusive;
        diag.reason = "schedule has fewer than 2 rungs";
        return diag;
    }

    LocalTimeEvaluator eval(paths, alpha, sign);
    std::vector<std::vector<double>> per_eps;
    per_eps.reserve(eps_schedule.size());
    for (double eps : eps_schedule) {
        per_eps.push_back(eval.lt_all_paths(eps, x, T));
        const auto st = moment_stats(per_eps.back());
        diag.mc_mean.push_back(st.mean);
        diag.mc_second_moment.push_back(st.second_moment);
        diag.mc_second_se.push_back(st.second_se);
    }
    for (std::size_t i = 0; i + 1 < per_eps.size(); ++i) {
        std::vector<double> dsq(paths.n_paths);
        for (std::size_t p = 0; p < paths.n_paths; ++p) {
            const double dd = per_eps[i][p] - per_eps[i + 1][p];
            dsq[p] = dd * dd;
        }
        diag.pairwise_l2.push_back(pairwise_sum(dsq) / static_cast<double>(paths.n_paths));
    }

    // Diverging: normalized growth per eps-halving above threshold over the
    // last three rung pairs.
    const std::size_t n = eps_schedule.size();
    if (n >= 4) {
        bool diverging = true;
        bool discriminable = true;
        for (std::size_t i = n - 4; i + 1 < n; ++i) {
            const double halvings = std::log2(eps_schedule[i] / eps_schedule[i + 1]);
            const double growth =
                std::pow(diag.mc_second_moment[i + 1] / diag.mc_second_moment[i],
                         1.0 / halvings);
            if (!(growth > opts.growth_factor_per_halving)) diverging = false;
            const double gap = diag.mc_second_moment[i + 1] - diag.mc_second_moment[i];
            if (std::abs(gap) < 2.0 * (diag.mc_second_se[i] + diag.mc_second_se[i + 1]))
                discriminable = false;
        }
        if (diverging && discriminable) {
            diag.verdict = Verdict::Diverging;
            diag.reason = "second moment grows beyond the per-halving factor";
            return diag;
        }
    }

    // Stabilizing: pairwise L2 below tolerance relative to the second moment
    // and shrinking over the last rungs.
    const double last_pair = diag.pairwise_l2.back();
    const double ref = diag.mc_second_moment.back();
    const bool small = last_pair < opts.stabilize_tol * ref;
    bool shrinking = true;
    if (diag.pairwise_l2.size() >= 2) {
        const std::size_t k = diag.pairwise_l2.size();
        for (std::size_t i = (k >= 3 ? k - 3 : 0); i + 1 < k; ++i)
            if (!(diag.pairwise_l2[i + 1] < diag.pairwise_l2[i])) shrinking = false;
    }
    if (small && shrinking) {
        diag.verdict = Verdict::Stabilizing;
        diag.reason = "pairwise L2 differences below tolerance and shrinking";
        return diag;
    }
    diag.verdict = Verdict::Inconclusive;
    diag.reason = small ? "pairwise differences small but not monotone"
                        : "neither divergence nor stabilization criteria met";
    return diag;
}

namespace {

HolderFit holder_fit_common(const std::vector<double>& offsets,
                            const std::vector<double>& moments,
                            const std::vector<double>& ses, double predicted, int m) {
    HolderFit out;
    out.predicted = predicted;
    out.fit = [&] {
        // fit_rate expects a decreasing schedule; offsets ascend, so feed the
        // generic log-log fit and wrap it.
        const auto f = fit_loglog(offsets, moments);
        RateFit r;
        r.slope = f.slope;
        r.intercept = f.intercept;
        r.r2 = f.r2;
        r.predicted_exponent = predicted * m;
        r.eps_range = {offsets.front(), offsets.back()};
        r.inconclusive = f.r2 < 0.95;
        return r;
    }();
    out.theta_hat = out.fit.slope / static_cast<double>(m);
    for (std::size_t i = 0; i < moments.size(); ++i)
        if (ses[i] > 0.5 * moments[i]) out.inconclusive = true;
    out.inconclusive = out.inconclusive || out.fit.inconclusive;
    return out;
}

} // namespace

HolderFit holder_exponent_time(const PathSet& paths, const MultiIndex& alpha, Sign sign,
                               std::span<const double> x, double eps, double t_base,
                               const std::vector<double>& offsets, int m) {
    if (offsets.size() < 3)
        throw std::domain_error("holder_exponent_time: need >= 3 scales");
    if (m < 2 || m % 2 != 0)
        throw std::domain_error("holder_exponent_time: m must be even and >= 2");
    LocalTimeEvaluator eval(paths, alpha, sign);
    const auto base = eval.lt_all_paths(eps, x, t_base);

    std::vector<double> moments, ses;
    for (double h : offsets) {
        const auto shifted = eval.lt_all_paths(eps, x, t_base + h);
        std::vector<double> dm(paths.n_paths);
        for (std::size_t p = 0; p < paths.n_paths; ++p)
            dm[p] = std::pow(std::abs(shifted[p] - base[p]), m);
        const auto st = moment_stats(dm);
        moments.push_back(st.mean);
        ses.push_back(st.mean_se);
    }
    const auto d = static_cast<double>(alpha.dim());
    const double predicted = 1.0 - paths.kind.hurst() * (alpha.total() + d);
    return holder_fit_common(offsets, moments, ses, predicted, m);
}

HolderFit holder_exponent_space(const PathSet& paths, const MultiIndex& alpha, Sign sign,
                                std::span<const double> x0, double eps, double T,
                                const std::vector<double>& offsets, int m) {
    if (offsets.size() < 3)
        throw std::domain_error("holder_exponent_space: need >= 3 scales");
    if (m < 2 || m % 2 != 0)
        throw std::domain_error("holder_exponent_space: m must be even and >= 2");
    LocalTimeEvaluator eval(paths, alpha, sign);
    const auto base = eval.lt_all_paths(eps, x0, T);

    // offsets below the floating-point lattice of the kernel argument
    // X_t + x cannot produce meaningful differences
    double arg_scale = 1.0 + std::abs(x0[0]);
    for (std::size_t k = 0; k < paths.grid.size(); ++k)
        for (std::size_t p = 0; p < std::min<std::size_t>(paths.n_paths, 64); ++p)
            arg_scale = std::max(arg_scale, std::abs(paths.value(p, k, 0)));
    const double z_floor = 64.0 * std::numeric_limits<double>::epsilon() * arg_scale;
    bool below_floor = false;
    for (double z : offsets) below_floor = below_floor || std::abs(z) < z_floor;

    std::vector<double> moments, ses;
    std::vector<double> x(x0.begin(), x0.end());
    for (double z : offsets) {
        x[0] = x0[0] + z;
        const auto shifted = eval.lt_all_paths(eps, x, T);
        std::vector<double> dm(paths.n_paths);
        for (std::size_t p = 0; p < paths.n_paths; ++p)
            dm[p] = std::pow(std::abs(shifted[p] - base[p]), m);
        const auto st = moment_stats(dm);
        moments.push_back(st.mean);
        ses.push_back(st.mean_se);
    }
    const auto d = static_cast<double>(alpha.dim());
    const double h = paths.kind.hurst();
    const double predicted =
        std::min(1.0, 0.5 * (1.0 / h - 2.0 * alpha.total() - d));
    auto fit = holder_fit_common(offsets, moments, ses, predicted, m);
    fit.inconclusive = fit.inconclusive || below_floor;
    return fit;
}

AlphaContinuityReport alpha_continuity_check(const PathSet& paths, const MultiIndex& alpha,
                                             const std::vector<MultiIndex>& betas, Sign sign,
                                             std::span<const double> x, double T, double eps) {
    const auto d = static_cast<double>(alpha.dim());
    const double h = paths.kind.hurst();
    auto existence = [&](const MultiIndex& idx) {
        return h * (2.0 * idx.total() + d) < 1.0;
    };
    if (!existence(alpha))
        throw PreconditionError("alpha_continuity_check: alpha outside the existence regime");
    for (const auto& b : betas)
        if (!existence(b))
            throw PreconditionError("alpha_continuity_check: beta outside the existence regime");

    LocalTimeEvaluator eval_a(paths, alpha, sign);
    const auto base = eval_a.lt_all_paths(eps, x, T);

    AlphaContinuityReport rep;
    for (const auto& b : betas) {
        LocalTimeEvaluator eval_b(paths, b, sign);
        const auto vals = eval_b.lt_all_paths(eps, x, T);
        std::vector<double> dsq(paths.n_paths);
        for (std::size_t p = 0; p < paths.n_paths; ++p) {
            const double dd = vals[p] - base[p];
            dsq[p] = dd * dd;
        }
        const auto st = moment_stats(dsq);
        rep.distances.push_back(st.mean);
        rep.ses.push_back(st.mean_se);
    }
    rep.decreasing_within_bars = true;
    for (std::size_t i = 0; i + 1 < rep.distances.size(); ++i) {
        if (rep.distances[i + 1] >
            rep.distances[i] + 2.0 * (rep.ses[i] + rep.ses[i + 1]))
            rep.decreasing_within_bars = false;
    }
    return rep;
}

} // namespace fraclab
