#include "fraclab/gp_sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "detail/fft.hpp"
#include "fraclab/errors.hpp"
#include "fraclab/parallel.hpp"
#include "fraclab/rng.hpp"

namespace fraclab {

TimeGrid TimeGrid::regular(double T, std::size_t n_steps, bool include_zero) {
    if (!(T > 0.0) || n_steps == 0)
        throw std::domain_error("TimeGrid::regular: need T > 0 and n_steps >= 1");
    TimeGrid g;
    const double dt = T / static_cast<double>(n_steps);
    if (include_zero) g.points_.push_back(0.0);
    for (std::size_t k = 1; k <= n_steps; ++k)
        g.points_.push_back(dt * static_cast<double>(k));
    g.uniform_ = true;
    g.dt_ = dt;
    return g;
}

TimeGrid TimeGrid::from_points(std::vector<double> points) {
    if (points.empty()) throw std::domain_error("TimeGrid: empty grid");
    if (points.front() < 0.0) throw std::domain_error("TimeGrid: times must be >= 0");
    for (std::size_t k = 1; k < points.size(); ++k)
        if (!(points[k] > points[k - 1]))
            throw std::domain_error("TimeGrid: times must be strictly increasing");
    TimeGrid g;
    g.points_ = std::move(points);
    if (g.points_.size() >= 2) {
        const double dt = g.points_[1] - g.points_[0];
        g.uniform_ = true;
        for (std::size_t k = 1; k + 1 < g.points_.size(); ++k) {
            if (std::abs(g.points_[k + 1] - g.points_[k] - dt) > 1e-12 * dt) {
                g.uniform_ = false;
                break;
            }
        }
        g.dt_ = g.uniform_ ? dt : 0.0;
    } else {
        g.uniform_ = true;
        g.dt_ = 0.0;
    }
    return g;
}

std::string to_string(SimMethod m) {
    switch (m) {
        case SimMethod::Cholesky: return "cholesky";
        case SimMethod::CirculantFGN: return "circulant_fgn";
        case SimMethod::CirculantFellBackToCholesky: return "circulant_fellback_cholesky";
    }
    return "?";
}

namespace {

/// Cholesky factor of the covariance on the positive times of the grid,
/// with a jitter ladder 1e-14..1e-8 (x trace/n).
Eigen::MatrixXd chol_factor(const ProcessKind& kind, const std::vector<double>& times) {
    const auto n = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXd sigma(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = cov(kind, times[static_cast<std::size_t>(i)],
                                 times[static_cast<std::size_t>(j)]);
            sigma(i, j) = v;
            sigma(j, i) = v;
        }
    const double unit = sigma.trace() / static_cast<double>(n);
    for (double jitter = 0.0; jitter <= 1e-8; jitter = (jitter == 0.0 ? 1e-14 : jitter * 10.0)) {
        Eigen::MatrixXd work = sigma;
        if (jitter > 0.0) work.diagonal().array() += jitter * unit;
        Eigen::LLT<Eigen::MatrixXd> llt(work);
        if (llt.info() == Eigen::Success) return llt.matrixL();
        if (jitter >= 1e-8) break;
    }
    throw NumericalError("simulate_cholesky: covariance not PSD after jitter escalation"
                         " (n=" + std::to_string(times.size()) + ", t_max=" +
                         std::to_string(times.back()) + ")");
}

} // namespace

PathSet simulate_cholesky(const ProcessKind& kind, const TimeGrid& grid, std::size_t d,
                          std::size_t n_paths, std::uint64_t seed) {
    if (d == 0 || n_paths == 0)
        throw std::domain_error("simulate_cholesky: d and n_paths must be >= 1");
    if (grid.size() > 4096)
        throw PreconditionError("simulate_cholesky: grid capped at 4096 points");
    const bool has_zero = grid.starts_at_zero();
    std::vector<double> times(grid.points().begin() + (has_zero ? 1 : 0),
                              grid.points().end());
    if (!times.empty() && times.front() <= 0.0)
        throw std::domain_error("simulate_cholesky: times must be positive (0 only first)");

    PathSet ps{kind, grid, d, n_paths, seed, SimMethod::Cholesky, {}};
    ps.values.assign(d * grid.size() * n_paths, 0.0);
    if (times.empty()) return ps;

    const Eigen::MatrixXd L = chol_factor(kind, times);
    const auto n = static_cast<std::size_t>(L.rows());
    const std::size_t offset = has_zero ? 1 : 0;

    for (std::size_t comp = 0; comp < d; ++comp) {
        for_each_chunk(n_paths, [&](std::size_t, std::size_t begin, std::size_t end) {
            const auto block = static_cast<Eigen::Index>(end - begin);
            Eigen::MatrixXd z(static_cast<Eigen::Index>(n), block);
            for (std::size_t p = begin; p < end; ++p) {
                rng::Stream stream(seed, comp * n_paths + p);
                for (std::size_t k = 0; k < n; ++k)
                    z(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(p - begin)) =
                        stream.next_normal();
            }
            const Eigen::MatrixXd v = L * z;
            for (std::size_t p = begin; p < end; ++p)
                for (std::size_t k = 0; k < n; ++k)
                    ps.values[(comp * grid.size() + k + offset) * n_paths + p] =
                        v(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(p - begin));
        });
    }
    return ps;
}

PathSet simulate_fgn_circulant(const ProcessKind& kind, const TimeGrid& grid, std::size_t d,
                               std::size_t n_paths, std::uint64_t seed) {
    if (kind.family() != Family::FBM)
        throw PreconditionError("simulate_fgn_circulant: only fBm has stationary increments");
    if (!grid.uniform() || grid.size() < 2)
        throw PreconditionError("simulate_fgn_circulant: uniform grid required");
    const double dt = grid.dt();
    const bool has_zero = grid.starts_at_zero();
    if (!has_zero && std::abs(grid[0] - dt) > 1e-12 * dt)
        throw PreconditionError("simulate_fgn_circulant: grid must start at 0 or dt");
    if (d == 0 || n_paths == 0)
        throw std::domain_error("simulate_fgn_circulant: d and n_paths must be >= 1");

    const std::size_t n_inc = grid.size() - (has_zero ? 1 : 0);
    const double H = kind.hurst();
    const double scale = std::pow(dt, 2.0 * H);

    // fGn autocovariance gamma(k) and its circulant embedding of size 2 n_inc.
    const std::size_t m = 2 * n_inc;
    std::vector<double> gamma(n_inc + 1);
    for (std::size_t k = 0; k <= n_inc; ++k) {
        const double kk = static_cast<double>(k);
        gamma[k] = 0.5 * scale *
                   (std::pow(kk + 1.0, 2.0 * H) - 2.0 * std::pow(kk, 2.0 * H) +
                    std::pow(std::abs(kk - 1.0), 2.0 * H));
    }
    std::vector<std::complex<double>> c(m);
    for (std::size_t j = 0; j < m; ++j)
        c[j] = gamma[j <= n_inc ? j : m - j];
    const auto lambda_c = detail::fft(c, -1);

    std::vector<double> lambda(m);
    double lambda_max = 0.0, lambda_min = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        lambda[j] = lambda_c[j].real();
        lambda_max = std::max(lambda_max, lambda[j]);
        lambda_min = std::min(lambda_min, lambda[j]);
    }
    if (lambda_min < -1e-10 * lambda_max) {
        // Embedding not nonnegative-definite at this size: exact fallback.
        PathSet ps = simulate_cholesky(kind, grid, d, n_paths, seed);
        ps.method = SimMethod::CirculantFellBackToCholesky;
        return ps;
    }
    for (auto& l : lambda) l = std::max(l, 0.0);

    PathSet ps{kind, grid, d, n_paths, seed, SimMethod::CirculantFGN, {}};
    ps.values.assign(d * grid.size() * n_paths, 0.0);
    const std::size_t offset = has_zero ? 1 : 0;
    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));

    for (std::size_t comp = 0; comp < d; ++comp) {
        for_each_chunk(n_paths, [&](std::size_t, std::size_t begin, std::size_t end) {
            std::vector<std::complex<double>> xi(m);
            for (std::size_t p = begin; p < end; ++p) {
                rng::Stream stream(seed, comp * n_paths + p);
                xi[0] = std::sqrt(lambda[0]) * stream.next_normal();
                xi[n_inc] = std::sqrt(lambda[n_inc]) * stream.next_normal();
                for (std::size_t k = 1; k < n_inc; ++k) {
                    const double a = stream.next_normal();
                    const double b = stream.next_normal();
                    const double r = std::sqrt(0.5 * lambda[k]);
                    xi[k] = {r * a, r * b};
                    xi[m - k] = std::conj(xi[k]);
                }
                const auto g = detail::fft(xi, -1);
                double x = 0.0;
                for (std::size_t k = 0; k < n_inc; ++k) {
                    x += g[k].real() * inv_sqrt_m;
                    ps.values[(comp * grid.size() + k + offset) * n_paths + p] = x;
                }
            }
        });
    }
    return ps;
}

CovCheckReport empirical_cov_check(
    const PathSet& paths, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    if (paths.n_paths < 1000)
        throw PreconditionError("empirical_cov_check: need n_paths >= 1000");
    CovCheckReport report;
    const double n_eff = static_cast<double>(paths.n_paths * paths.d);
    for (const auto& [ti, si] : pairs) {
        const double t = paths.grid[ti];
        const double s = paths.grid[si];
        const double analytic = cov(paths.kind, t, s);
        double acc = 0.0;
        for (std::size_t comp = 0; comp < paths.d; ++comp) {
            const auto xt = paths.at_time(ti, comp);
            const auto xs = paths.at_time(si, comp);
            double local = 0.0;
            for (std::size_t p = 0; p < paths.n_paths; ++p) local += xt[p] * xs[p];
            acc += local;
        }
        const double sample = acc / n_eff;
        // Var(X_t X_s) = cov(t,t) cov(s,s) + cov(t,s)^2 for centered Gaussians
        const double var = cov(paths.kind, t, t) * cov(paths.kind, s, s) + analytic * analytic;
        const double se = std::sqrt(std::max(var, 1e-300) / n_eff);
        CovCheckEntry e;
        e.t_idx = ti;
        e.s_idx = si;
        e.sample = sample;
        e.analytic = analytic;
        e.z = se > 0.0 ? (sample - analytic) / se : 0.0;
        e.flagged = std::abs(e.z) > 5.0;
        if (e.flagged) ++report.flagged;
        report.entries.push_back(e);
    }
    report.flagged_fraction =
        report.entries.empty() ? 0.0
                               : static_cast<double>(report.flagged) /
                                     static_cast<double>(report.entries.size());
    report.pass = report.flagged_fraction <= 0.05;
    return report;
}

std::string CovCheckReport::to_json() const {
    nlohmann::json j;
    j["flagged"] = flagged;
    j["flagged_fraction"] = flagged_fraction;
    j["pass"] = pass;
    auto arr = nlohmann::json::array();
    for (const auto& e : entries)
        arr.push_back({{"t_idx", e.t_idx},
                       {"s_idx", e.s_idx},
                       {"sample", e.sample},
                       {"analytic", e.analytic},
                       {"z", e.z},
                       {"flagged", e.flagged}});
    j["entries"] = arr;
    return j.dump(2);
}

void write_pathset_binary(const PathSet& ps, const std::string& data_path,
                          const std::string& sidecar_path) {
    std::ofstream bin(data_path, std::ios::binary);
    if (!bin) throw std::runtime_error("cannot open " + data_path);
    bin.write(reinterpret_cast<const char*>(ps.values.data()),
              static_cast<std::streamsize>(ps.values.size() * sizeof(double)));

    nlohmann::json j;
    j["kind"] = nlohmann::json::parse(ps.kind.to_json());
    j["grid"] = ps.grid.points();
    j["d"] = ps.d;
    j["n_paths"] = ps.n_paths;
    j["seed"] = ps.seed;
    j["method"] = to_string(ps.method);
    j["layout"] = "value(p,k,l) = data[(l*n_times + k)*n_paths + p], float64";
    std::ofstream side(sidecar_path);
    if (!side) throw std::runtime_error("cannot open " + sidecar_path);
    side << j.dump(2) << '\n';
}

void write_pathset_csv(const PathSet& ps, const std::string& csv_path) {
    if (ps.n_paths * ps.grid.size() * ps.d > 4'000'000)
        throw PreconditionError("write_pathset_csv: set too large, use binary export");
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open " + csv_path);
    out << "# schema=1\npath,component,time,value\n";
    out.precision(17);
    for (std::size_t p = 0; p < ps.n_paths; ++p)
        for (std::size_t l = 0; l < ps.d; ++l)
            for (std::size_t k = 0; k < ps.grid.size(); ++k)
                out << p << ',' << l << ',' << ps.grid[k] << ',' << ps.value(p, k, l) << '\n';
}

} // namespace fraclab
