#include "fraclab/cov_checks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fraclab {

namespace {

struct SlackTracker {
    double worst = std::numeric_limits<double>::infinity();
    double t = 0, s = 0, eps = 0;
    void observe(double slack, double t_, double s_, double eps_) {
        if (slack < worst) {
            worst = slack;
            t = t_;
            s = s_;
            eps = eps_;
        }
    }
    BoundCheck finish(const std::string& name) const {
        BoundCheck b;
        b.name = name;
        b.worst_slack = worst;
        b.argmin_t = t;
        b.argmin_s = s;
        b.argmin_eps = eps;
        b.pass = worst >= 1.0 - 1e-9;
        return b;
    }
};

double cov_increment_with_level(const ProcessKind& kind, double t, double s) {
    // E[(X_t - X_s) X_s] = cov(t,s) - cov(s,s)
    return cov(kind, t, s) - cov(kind, s, s);
}

} // namespace

std::vector<std::pair<double, double>> beta_tilde_envelope(
    const ProcessKind& kind, const std::vector<double>& gamma_grid) {
    std::vector<double> gammas = gamma_grid;
    std::sort(gammas.begin(), gammas.end(), std::greater<>());
    const double h = kind.hurst();

    std::vector<std::pair<double, double>> env;
    double running = 0.0;
    // Largest gamma first: its region is the innermost shell; as gamma
    // decreases the region widens, so the cumulative max is the envelope.
    for (double gamma : gammas) {
        if (!(gamma > 1.0)) throw std::domain_error("beta_tilde_envelope: gamma > 1 required");
        for (double t = 1e-2; t <= 1e2; t *= 1.35) {
            // (t-s)/s <= 1/gamma  <=>  s >= t gamma/(gamma+1)
            const double s_lo = t * gamma / (gamma + 1.0);
            for (int i = 1; i <= 24; ++i) {
                const double s = s_lo + (t - s_lo) * (static_cast<double>(i) / 25.0);
                const double num = std::abs(cov_increment_with_level(kind, t, s));
                const double den = std::pow(s, h) * std::pow(t - s, h);
                if (den > 0.0) running = std::max(running, num / den);
            }
        }
        env.emplace_back(gamma, running);
    }
    std::reverse(env.begin(), env.end()); // ascending gamma, nonincreasing value
    return env;
}

PropositionReport verify_two_time_propositions(
    const ProcessKind& kind, const std::vector<std::pair<double, double>>& pairs,
    const std::vector<double>& eps_list, const SlndConstants& consts) {
    const double h = kind.hurst();
    const double h2 = 2.0 * h;
    const double kap = consts.kappa, bigk = consts.big_k;
    const double k1 = std::max(bigk, 1.0), k2 = std::max(bigk, 2.0);
    const double c1 = std::min(kap, 1.0), c2 = std::min(kap, 2.0);

    SlackTracker a_lo, a_hi, c_lo, c_hi, d_lo, d_hi;
    SlackTracker delta_lo, delta_hi, g_lo, g_hi, cb_hi, b_lo;
    double m_const = 0.0;

    const auto envelope = beta_tilde_envelope(
        kind, {1.5, 2.0, 3.0, 5.0, 8.0, 14.0, 25.0, 45.0, 80.0, 150.0, 400.0, 1000.0});

    for (const auto& [t, s] : pairs) {
        if (!(s > 0.0 && t > s))
            throw std::domain_error("verify_two_time_propositions: pairs need 0 < s < t");
        for (double eps : eps_list) {
            const auto st = two_time_stats(kind, t, s, eps);
            const double ts_pow = std::pow(t - s, h2) + eps;
            const double s_pow = std::pow(s, h2) + eps;
            const double t_pow = std::pow(t, h2) + eps;

            a_lo.observe(st.A / (c1 * t_pow), t, s, eps);
            a_hi.observe(k1 * t_pow / st.A, t, s, eps);
            c_lo.observe(st.C / (c1 * s_pow), t, s, eps);
            c_hi.observe(k1 * s_pow / st.C, t, s, eps);
            d_lo.observe(st.D / (c2 * ts_pow), t, s, eps);
            d_hi.observe(k2 * ts_pow / st.D, t, s, eps);

            delta_lo.observe(st.Delta / (c1 * c1 * ts_pow * s_pow), t, s, eps);
            delta_hi.observe(k2 * k2 * ts_pow * s_pow / st.Delta, t, s, eps);
            g_lo.observe(st.G / (std::sqrt(c2 / (k2 * k2)) / std::sqrt(s_pow)), t, s, eps);
            g_hi.observe(std::sqrt(k2 / (c1 * c1)) / std::sqrt(s_pow) / st.G, t, s, eps);
            cb_hi.observe(k1 * std::sqrt(s_pow * ts_pow) / std::abs(st.C - st.B), t, s, eps);

            // fitted constant of the M bound over the gamma grid
            for (const auto& [gamma, beta] : envelope) {
                const double bracket =
                    beta * std::sqrt(s_pow * ts_pow) + std::pow(gamma, h) * ts_pow;
                if (bracket > 0.0) m_const = std::max(m_const, st.M / bracket);
            }
        }
        // Proposition 4.3 on the derived region (statement says (2k/K)^{1/H};
        // the derivation supports (k/(2K))^{1/H}, which is what we scan).
        const double region = std::pow(kap / (2.0 * bigk), 1.0 / h);
        if ((t - s) / s <= region) {
            const double b_val = cov(kind, t, s);
            b_lo.observe(b_val / (0.5 * kap * std::pow(s, h2)), t, s, 0.0);
        }
    }

    PropositionReport rep;
    rep.bounds = {
        a_lo.finish("prop41.A.lower"),     a_hi.finish("prop41.A.upper"),
        c_lo.finish("prop41.C.lower"),     c_hi.finish("prop41.C.upper"),
        d_lo.finish("prop41.D.lower"),     d_hi.finish("prop41.D.upper"),
        delta_lo.finish("prop42.Delta.lower"), delta_hi.finish("prop42.Delta.upper"),
        g_lo.finish("prop42.G.lower"),     g_hi.finish("prop42.G.upper"),
        cb_hi.finish("prop42.CB.upper"),
    };
    if (std::isfinite(b_lo.worst)) rep.bounds.push_back(b_lo.finish("prop43.B.lower"));
    rep.beta_envelope = envelope;
    rep.m_bound_constant = m_const;
    rep.pass = true;
    for (const auto& b : rep.bounds) rep.pass = rep.pass && b.pass;
    rep.pass = rep.pass && std::isfinite(m_const);
    rep.note =
        "prop43 region uses the derived threshold (kappa/(2K))^{1/H}; the statement's "
        "(2 kappa/K)^{1/H} is wider and unsupported by the derivation";
    return rep;
}

std::string PropositionReport::to_json() const {
    nlohmann::json j;
    auto arr = nlohmann::json::array();
    for (const auto& b : bounds)
        arr.push_back({{"name", b.name},
                       {"worst_slack", b.worst_slack},
                       {"argmin_pair", {b.argmin_t, b.argmin_s}},
                       {"epsilon", b.argmin_eps},
                       {"pass", b.pass}});
    j["bounds"] = arr;
    auto env = nlohmann::json::array();
    for (const auto& [g, v] : beta_envelope) env.push_back({{"gamma", g}, {"beta", v}});
    j["beta_envelope"] = env;
    j["m_bound_constant"] = m_bound_constant;
    j["pass"] = pass;
    j["note"] = note;
    return j.dump(2);
}

IncrementCovBoundReport verify_increment_cov_bound(const ProcessKind& kind, double t,
                                                   double s, double gamma) {
    if (!(t > s && s > 0.0)) throw std::domain_error("verify_increment_cov_bound: t > s > 0");
    if (!(gamma > 1.0)) throw std::domain_error("verify_increment_cov_bound: gamma > 1");
    const double h = kind.hurst();

    std::vector<double> gamma_grid = {1.5, 2.0, 3.0, 5.0, 8.0, 14.0, 25.0,
                                      45.0, 80.0, 150.0, 400.0, 1000.0};
    if (std::find(gamma_grid.begin(), gamma_grid.end(), gamma) == gamma_grid.end())
        gamma_grid.push_back(gamma);
    std::sort(gamma_grid.begin(), gamma_grid.end());
    const auto envelope = beta_tilde_envelope(kind, gamma_grid);
    auto beta_at = [&](double g) {
        // envelope is ascending in gamma; take the entry at or above g
        for (const auto& [gg, vv] : envelope)
            if (gg >= g - 1e-12) return vv;
        return envelope.back().second;
    };

    // Fit the constant over a (t, s, gamma) family.
    double k_fit = 0.0;
    for (double tt = 1e-2; tt <= 1e2; tt *= 1.6) {
        for (double frac : {1e-4, 1e-2, 0.05, 0.2, 0.5, 0.8, 0.97}) {
            const double ss = tt * (1.0 - frac);
            if (ss <= 0.0) continue;
            const double lhs = std::abs(cov(kind, tt, ss) - cov(kind, ss, ss));
            for (double g : gamma_grid) {
                const double br = beta_at(g) * std::pow(ss, h) * std::pow(tt - ss, h) +
                                  std::pow(g, h) * std::pow(tt - ss, 2.0 * h);
                if (br > 0.0) k_fit = std::max(k_fit, lhs / br);
            }
        }
    }

    IncrementCovBoundReport rep;
    rep.envelope = envelope;
    rep.k_fit = k_fit;
    rep.lhs = std::abs(cov(kind, t, s) - cov(kind, s, s));
    rep.bracket = beta_at(gamma) * std::pow(s, h) * std::pow(t - s, h) +
                  std::pow(gamma, h) * std::pow(t - s, 2.0 * h);
    rep.ratio = rep.lhs / rep.bracket;
    rep.pass = rep.ratio <= k_fit * (1.0 + 1e-9) + 1e-300;
    return rep;
}

} // namespace fraclab
