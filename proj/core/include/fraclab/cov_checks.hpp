#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fraclab/process.hpp"
#include "fraclab/two_time.hpp"

namespace fraclab {

struct BoundCheck {
    std::string name;
    double worst_slack = 0; // min over the scan of bound/value (or value/bound)
    double argmin_t = 0, argmin_s = 0, argmin_eps = 0;
    bool pass = false; // worst_slack >= 1 - 1e-9
};

/// Empirical envelope beta~(gamma) = running max over (t,s) with
/// (t-s)/s <= 1/gamma of |E(X_t - X_s) X_s| / (s^H (t-s)^H), nonincreasing
/// in gamma by construction (cumulative max over shrinking regions).
std::vector<std::pair<double, double>> beta_tilde_envelope(
    const ProcessKind& kind, const std::vector<double>& gamma_grid);

struct PropositionReport {
    std::vector<BoundCheck> bounds;
    std::vector<std::pair<double, double>> beta_envelope; // (gamma, beta~)
    double m_bound_constant = 0;                          // fitted K~ of the M bound
    bool pass = false;
    std::string note; // records the stated-vs-derived threshold discrepancy
    std::string to_json() const;
};

/// Two-sided bounds on A, C, D (4.1), Delta, G, |C-B| (4.2), the lower bound
/// B >= kappa/2 s^{2H} on the derived region (t-s)/s <= (kappa/(2K))^{1/H}
/// (4.3), and the fitted envelope form of the M bound (4.4), scanned over the
/// given pairs and eps values with the supplied constants.
PropositionReport verify_two_time_propositions(
    const ProcessKind& kind, const std::vector<std::pair<double, double>>& pairs,
    const std::vector<double>& eps_list, const SlndConstants& consts);

struct IncrementCovBoundReport {
    double lhs = 0;          // |E (X_t - X_s) X_s|
    double bracket = 0;      // beta~(gamma) s^H (t-s)^H + gamma^H (t-s)^{2H}
    double k_fit = 0;        // envelope constant fitted over the scan family
    double ratio = 0;        // lhs / bracket
    bool pass = false;       // ratio <= k_fit (with rounding slack)
    std::vector<std::pair<double, double>> envelope;
};

/// Covariance-of-increments bound at a requested (t, s, gamma), with the
/// constant fitted over a log-spaced (t, s, gamma) family.
IncrementCovBoundReport verify_increment_cov_bound(const ProcessKind& kind, double t,
                                                   double s, double gamma);

} // namespace fraclab
