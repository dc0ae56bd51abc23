#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fraclab {

struct LogLogFit {
    double slope = 0, intercept = 0, r2 = 0;
};

/// Least squares of log(y) on log(x).
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

/// A log-log regression result against a predicted exponent. Two models are
/// fitted: pure power y = c eps^b and power-with-log y = c ln(1+eps^{-1/2})
/// eps^b; the one with the smaller residual is selected and reported in
/// slope/intercept/r2, with log_factor_detected saying which won.
struct RateFit {
    double slope = 0, intercept = 0, r2 = 0;
    bool log_factor_detected = false;
    double predicted_exponent = 0;
    // Secondary prediction when the source states two inconsistent exponents
    // (reported, not asserted); NaN when unused.
    double predicted_exponent_alt = 0;
    bool has_alt_prediction = false;
    bool inconclusive = false; // r2 < 0.95
    std::pair<double, double> eps_range{0, 0};
    // both-model diagnostics
    double slope_pure = 0, r2_pure = 0;
    double slope_log = 0, r2_log = 0;

    bool slope_within(double tol) const { return std::abs(slope - predicted_exponent) <= tol; }
    std::string to_json() const;
};

/// Fits value(eps) against the two models above. Requires >= 4 rungs and a
/// strictly decreasing eps schedule.
RateFit fit_rate(const std::vector<double>& eps, const std::vector<double>& value,
                 double predicted_exponent);

} // namespace fraclab
