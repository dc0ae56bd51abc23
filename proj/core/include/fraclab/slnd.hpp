#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fraclab/process.hpp"
#include "fraclab/two_time.hpp"

namespace fraclab {

struct CondVarResult {
    double t = 0;
    std::vector<double> conditioners;
    double value = 0; // Var(X^1_t | X^1_{s_1..s_m})
    double ratio = 0; // value / min(min_i |t-s_i|^{2H}, t^{2H})
};

/// Schur-complement conditional variance, cross-checked against the
/// determinant decomposition det Cov = Var(Y_1) prod Var(Y_m | Y_1..Y_{m-1})
/// to 1e-10 relative. Near-singular conditioner sets go through the same
/// jitter ladder as the simulator; truly singular sets raise a domain error.
CondVarResult cond_var(const ProcessKind& kind, double t,
                       const std::vector<double>& conditioners);

/// Empirical SLND certification. Scans an adversarial configuration family
/// (conditioner clusters t +- delta 2^{-j} down to 1e-6 t, plus uniform
/// draws), estimates kappa as the worst conditional-variance ratio and K as
/// the largest increment-variance ratio, and asserts kappa > 0 stable within
/// 10% under doubling of the trial count (NumericalError otherwise).
SlndConstants slnd_scan(const ProcessKind& kind, std::size_t m_max, std::size_t n_trials,
                        std::uint64_t seed);

/// Covariance of the Lamperti stationarization Y_t = e^{-Ht} Z_{e^t}:
/// r(t) = e^{-H|t|} cov(kind, 1, e^{|t|}), even in t. Large arguments use
/// cancellation-free expansions of the covariance.
double stationary_transform_r(const ProcessKind& kind, double t);

struct SpectralLowerEntry {
    double lambda = 0;
    double transform = 0; // int_0^inf r(t) cos(lambda t) dt
    double weighted = 0;  // transform * (1+|lambda|)^{1+2H}
};

struct SpectralLowerReport {
    std::vector<SpectralLowerEntry> entries;
    double c_hat = 0; // min weighted value over the grid
    bool nonnegative_r = false;
    bool decreasing_r = false;
    bool transform_positive = false;
    bool pass = false;
    double t_tail = 0;           // truncation point with r(t_tail) < 1e-12
    std::string failure;         // names the offending lambda or t on failure
    std::string to_json() const;
};

/// Grid-based check of the spectral SLND criterion: r nonnegative and
/// decreasing, r integrable, and the cosine transform bounded below by
/// c_hat / (1+|lambda|)^{1+2H} with c_hat > 0.
SpectralLowerReport spectral_lower_check(const ProcessKind& kind,
                                         const std::vector<double>& lambda_grid);

} // namespace fraclab
