#include "fraclab/slnd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <nlohmann/json.hpp>

#include "fraclab/errors.hpp"
#include "fraclab/rng.hpp"

namespace fraclab {

namespace {

/// Conditional variance, the determinant-identity cross-check and a
/// condition estimate of the conditioner block, for a fixed jitter level.
struct CondVarRoutes {
    double schur = -1.0;
    double det_route = -1.0;
    double cond = 1.0;
};
CondVarRoutes cond_var_once(const ProcessKind& kind, double t,
                            const std::vector<double>& s, double jitter) {
    const auto m = static_cast<Eigen::Index>(s.size());
    Eigen::MatrixXd k_mat(m, m);
    Eigen::VectorXd k_vec(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        k_vec(i) = cov(kind, t, s[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v =
                cov(kind, s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
            k_mat(i, j) = v;
            k_mat(j, i) = v;
        }
    }
    if (jitter > 0.0) k_mat.diagonal().array() += jitter * k_mat.trace() / double(m);

    Eigen::LDLT<Eigen::MatrixXd> ldlt(k_mat);
    if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0.0).any())
        return {};
    CondVarRoutes out;
    const double var_t = cov(kind, t, t);
    out.schur = var_t - k_vec.dot(ldlt.solve(k_vec));
    out.cond = ldlt.vectorD().maxCoeff() / ldlt.vectorD().minCoeff();

    // det Cov(X_t, X_s..) / det Cov(X_s..) equals the same conditional
    // variance; evaluated independently as the cross-check.
    Eigen::MatrixXd full(m + 1, m + 1);
    full(0, 0) = var_t;
    full.block(1, 0, m, 1) = k_vec;
    full.block(0, 1, 1, m) = k_vec.transpose();
    full.block(1, 1, m, m) = k_mat;
    const double det_k = ldlt.vectorD().prod();
    out.det_route = full.ldlt().vectorD().prod() / det_k;
    return out;
}

double min_distance_pow(const ProcessKind& kind, double t, const std::vector<double>& s) {
    double dmin = t;
    for (double si : s) dmin = std::min(dmin, std::abs(t - si));
    return std::pow(dmin, 2.0 * kind.hurst());
}

/// cov(kind, 1, u) without catastrophic cancellation for large u.
double cov_one_u(const ProcessKind& kind, double u) {
    if (u < 1e4) return cov(kind, 1.0, u);
    const double h = kind.hurst();
    switch (kind.family()) {
        case Family::FBM: {
            // (u^{2H} - (u-1)^{2H}) = -u^{2H} expm1(2H log1p(-1/u))
            const double diff = -std::pow(u, 2.0 * h) * std::expm1(2.0 * h * std::log1p(-1.0 / u));
            return 0.5 * (1.0 + diff);
        }
        case Family::SubFBM: {
            const double x = 1.0 / u;
            const double b = -0.5 * (std::expm1(2.0 * h * std::log1p(x)) +
                                     std::expm1(2.0 * h * std::log1p(-x)));
            return 1.0 + std::pow(u, 2.0 * h) * b;
        }
        case Family::BiFBM: {
            const double h0 = kind.h0(), k0 = kind.k0();
            const double a = std::expm1(k0 * std::log1p(std::pow(u, -2.0 * h0)));
            const double b = std::expm1(2.0 * h * std::log1p(-1.0 / u));
            return std::exp2(-k0) * std::pow(u, 2.0 * h) * (a - b);
        }
    }
    throw std::logic_error("cov_one_u: unreachable");
}

} // namespace

CondVarResult cond_var(const ProcessKind& kind, double t,
                       const std::vector<double>& conditioners) {
    if (!(t > 0.0)) throw std::domain_error("cond_var: t must be > 0");
    CondVarResult res;
    res.t = t;
    res.conditioners = conditioners;
    if (conditioners.empty()) {
        res.value = cov(kind, t, t);
        res.ratio = res.value / std::pow(t, 2.0 * kind.hurst());
        return res;
    }
    for (double s : conditioners)
        if (!(s > 0.0)) throw std::domain_error("cond_var: conditioners must be > 0");
    {
        auto sorted = conditioners;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i] == sorted[i - 1])
                throw std::domain_error("cond_var: singular conditioner set (duplicate time)");
    }

    CondVarRoutes routes;
    double used_jitter = 0.0;
    for (double jitter = 0.0; jitter <= 1e-8;
         jitter = (jitter == 0.0 ? 1e-14 : jitter * 10.0)) {
        routes = cond_var_once(kind, t, conditioners, jitter);
        if (routes.schur >= 0.0) {
            used_jitter = jitter;
            break;
        }
        if (jitter >= 1e-8) break;
    }
    if (routes.schur < 0.0)
        throw std::domain_error("cond_var: singular conditioner set");

    // Both routes compute a possibly tiny conditional variance from O(scale)
    // inputs, so their achievable relative agreement is ~ eps * scale/value
    // (and degrades with cond(K)); the strict 1e-10 contract applies when
    // neither amplification is active.
    const double scale = cov(kind, t, t);
    const double eps_mach = std::numeric_limits<double>::epsilon();
    const double amplification =
        std::max(scale / std::max(routes.schur, 1e-300), routes.cond);
    const double tol = std::max(1e-10, 100.0 * eps_mach * amplification);
    if (std::abs(routes.schur - routes.det_route) >
        tol * std::max({routes.schur, routes.det_route, 1e-12 * scale}))
        throw NumericalError("cond_var: Schur and determinant routes disagree (jitter=" +
                             std::to_string(used_jitter) + ")");
    res.value = std::max(routes.schur, 0.0);
    res.ratio = res.value / min_distance_pow(kind, t, conditioners);
    return res;
}

namespace {

double kappa_scan(const ProcessKind& kind, std::size_t m_max, std::size_t n_trials,
                  std::uint64_t seed) {
    double kappa = std::numeric_limits<double>::infinity();
    // Deterministic adversarial clusters around a few base times.
    const double bases[] = {0.25, 1.0, 3.0};
    for (double t : bases) {
        for (int j = 0; j <= 19; ++j) {
            const double delta = t * std::pow(2.0, -j); // down to ~1e-6 t
            if (delta < 1e-6 * t) break;
            const std::vector<std::vector<double>> sets = {
                {t - delta, t + delta},
                {t - delta},
                {t + delta},
                {t - delta, t + delta, t - 2.0 * delta, t + 2.0 * delta},
            };
            for (const auto& s : sets) {
                bool ok = true;
                for (double si : s) ok = ok && si > 0.0;
                if (!ok) continue;
                kappa = std::min(kappa, cond_var(kind, t, s).ratio);
            }
        }
    }
    // Randomized configurations.
    rng::Stream stream(seed, 0x51cd);
    for (std::size_t trial = 0; trial < n_trials; ++trial) {
        const double t = 0.1 + 3.9 * stream.next_uniform();
        const auto m = static_cast<std::size_t>(2 + stream.next_u64() % (m_max - 1));
        std::vector<double> s;
        s.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            if (stream.next_uniform() < 0.5) {
                // cluster draw, log-uniform offset in [1e-6 t, t/2]
                const double e = stream.next_uniform();
                const double delta = t * std::pow(10.0, -6.0 * e) * 0.5;
                const double side = stream.next_uniform() < 0.5 ? -1.0 : 1.0;
                const double cand = t + side * delta;
                if (cand > 0.0) s.push_back(cand);
            } else {
                s.push_back(2.0 * t * stream.next_uniform() + 1e-8);
            }
        }
        if (s.empty()) continue;
        kappa = std::min(kappa, cond_var(kind, t, s).ratio);
    }
    return kappa;
}

} // namespace

SlndConstants slnd_scan(const ProcessKind& kind, std::size_t m_max, std::size_t n_trials,
                        std::uint64_t seed) {
    if (m_max < 2 || m_max > 16)
        throw PreconditionError("slnd_scan: m_max must lie in [2,16]");
    if (n_trials == 0) throw PreconditionError("slnd_scan: n_trials must be >= 1");

    const double kappa_half = kappa_scan(kind, m_max, n_trials, seed);
    const double kappa = std::min(kappa_half, kappa_scan(kind, m_max, 2 * n_trials, seed + 1));

    if (!(kappa > 0.0))
        throw NumericalError("slnd_scan: kappa collapsed to 0 (SLND empirically falsified)");
    if (std::abs(kappa_half - kappa) > 0.10 * kappa)
        throw NumericalError("slnd_scan: kappa unstable under trial doubling (" +
                             std::to_string(kappa_half) + " vs " + std::to_string(kappa) + ")");

    // Upper increment constant over a log-spaced pair family.
    double big_k = 0.0;
    const double h2 = 2.0 * kind.hurst();
    for (double t = 1e-3; t <= 1e3; t *= 1.6) {
        for (double frac : {1e-6, 1e-4, 1e-2, 0.1, 0.3, 0.5, 0.9, 0.99}) {
            const double s = t * (1.0 - frac);
            if (s <= 0.0) continue;
            big_k = std::max(big_k, increment_var(kind, t, s) / std::pow(t - s, h2));
        }
    }

    SlndConstants out;
    out.kappa = kappa;
    out.big_k = big_k;
    out.source = SlndConstants::Source::Empirical;
    nlohmann::json prov;
    prov["kind"] = nlohmann::json::parse(kind.to_json());
    prov["m_max"] = m_max;
    prov["n_trials"] = n_trials;
    prov["seed"] = seed;
    prov["kappa_at_n_trials"] = kappa_half;
    prov["kappa_at_2n_trials"] = kappa;
    prov["stable_10pct"] = true;
    out.provenance = prov.dump();
    return out;
}

double stationary_transform_r(const ProcessKind& kind, double t) {
    const double at = std::abs(t);
    const double h = kind.hurst();
    if (at > 700.0) return 0.0; // below double underflow of e^{-H t} scales
    return std::exp(-h * at) * cov_one_u(kind, std::exp(at));
}

SpectralLowerReport spectral_lower_check(const ProcessKind& kind,
                                         const std::vector<double>& lambda_grid) {
    SpectralLowerReport report;
    const double h = kind.hurst();

    // Integrability: find the truncation point r(t) < 1e-12.
    double t_tail = 1.0;
    while (stationary_transform_r(kind, t_tail) > 1e-12) {
        t_tail *= 1.5;
        if (t_tail > 1e5) {
            throw PreconditionError("spectral_lower_check: r(t) does not decay (tail "
                                    "estimate exceeded)");
        }
    }
    report.t_tail = t_tail;

    // Nonnegative and decreasing on a grid.
    report.nonnegative_r = true;
    report.decreasing_r = true;
    double prev = stationary_transform_r(kind, 0.0);
    const int n_scan = 2000;
    for (int i = 1; i <= n_scan; ++i) {
        const double ti = t_tail * i / n_scan;
        const double ri = stationary_transform_r(kind, ti);
        if (ri < -1e-14) {
            report.nonnegative_r = false;
            report.failure = "r negative at t=" + std::to_string(ti);
        }
        if (ri > prev + 1e-12 * std::abs(prev)) {
            report.decreasing_r = false;
            report.failure = "r increasing at t=" + std::to_string(ti);
        }
        prev = ri;
    }

    auto r = [&](double x) { return stationary_transform_r(kind, x); };
    boost::math::quadrature::ooura_fourier_cos<double> cos_integrator;
    boost::math::quadrature::exp_sinh<double> es;

    report.transform_positive = true;
    report.c_hat = std::numeric_limits<double>::infinity();
    for (double lambda : lambda_grid) {
        SpectralLowerEntry e;
        e.lambda = lambda;
        e.transform = lambda == 0.0 ? es.integrate(r, 1e-12)
                                    : cos_integrator.integrate(r, lambda).first;
        e.weighted = e.transform * std::pow(1.0 + std::abs(lambda), 1.0 + 2.0 * h);
        if (e.transform <= 0.0) {
            report.transform_positive = false;
            report.failure = "cosine transform nonpositive at lambda=" + std::to_string(lambda);
        }
        report.c_hat = std::min(report.c_hat, e.weighted);
        report.entries.push_back(e);
    }
    report.pass = report.nonnegative_r && report.decreasing_r && report.transform_positive &&
                  report.c_hat > 0.0;
    return report;
}

std::string SpectralLowerReport::to_json() const {
    nlohmann::json j;
    j["c_hat"] = c_hat;
    j["nonnegative_r"] = nonnegative_r;
    j["decreasing_r"] = decreasing_r;
    j["transform_positive"] = transform_positive;
    j["pass"] = pass;
    j["t_tail"] = t_tail;
    if (!failure.empty()) j["failure"] = failure;
    auto arr = nlohmann::json::array();
    for (const auto& e : entries)
        arr.push_back({{"lambda", e.lambda}, {"transform", e.transform}, {"weighted", e.weighted}});
    j["entries"] = arr;
    return j.dump(2);
}

} // namespace fraclab
