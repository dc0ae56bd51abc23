#include "fraclab/rate_fit.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fraclab {

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::domain_error("fit_loglog: need matching arrays with >= 2 points");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::domain_error("fit_loglog: data must be positive");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    LogLogFit f;
    const double denom = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ly = std::log(y[i]);
        const double fit = f.intercept + f.slope * std::log(x[i]);
        ss_res += (ly - fit) * (ly - fit);
        ss_tot += (ly - mean_y) * (ly - mean_y);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

RateFit fit_rate(const std::vector<double>& eps, const std::vector<double>& value,
                 double predicted_exponent) {
    if (eps.size() != value.size() || eps.size() < 4)
        throw std::domain_error("fit_rate: need >= 4 eps rungs");
    for (std::size_t i = 1; i < eps.size(); ++i)
        if (!(eps[i] < eps[i - 1]))
            throw std::domain_error("fit_rate: eps schedule must be strictly decreasing");

    RateFit out;
    out.predicted_exponent = predicted_exponent;
    out.eps_range = {eps.front(), eps.back()};

    const auto pure = fit_loglog(eps, value);
    out.slope_pure = pure.slope;
    out.r2_pure = pure.r2;

    // power-with-log model: divide out ln(1 + eps^{-1/2}) and refit.
    std::vector<double> deflated(value.size());
    for (std::size_t i = 0; i < value.size(); ++i)
        deflated[i] = value[i] / std::log1p(1.0 / std::sqrt(eps[i]));
    const auto withlog = fit_loglog(eps, deflated);
    out.slope_log = withlog.slope;
    out.r2_log = withlog.r2;

    // Select by residual in log space (equivalently by r2 on common data).
    double ss_pure = 0, ss_log = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const double le = std::log(eps[i]);
        const double lv = std::log(value[i]);
        const double fit_p = pure.intercept + pure.slope * le;
        const double fit_l =
            withlog.intercept + withlog.slope * le + std::log(std::log1p(1.0 / std::sqrt(eps[i])));
        ss_pure += (lv - fit_p) * (lv - fit_p);
        ss_log += (lv - fit_l) * (lv - fit_l);
    }
    out.log_factor_detected = ss_log < ss_pure;
    if (out.log_factor_detected) {
        out.slope = withlog.slope;
        out.intercept = withlog.intercept;
        out.r2 = withlog.r2;
    } else {
        out.slope = pure.slope;
        out.intercept = pure.intercept;
        out.r2 = pure.r2;
    }
    // r2 of a near-constant log-regime series is meaningless; rate fits that
    // ride on it set inconclusive themselves when appropriate.
    out.inconclusive = out.r2 < 0.95;
    return out;
}

std::string RateFit::to_json() const {
    nlohmann::json j;
    j["slope"] = slope;
    j["intercept"] = intercept;
    j["r2"] = r2;
    j["log_factor_detected"] = log_factor_detected;
    j["predicted_exponent"] = predicted_exponent;
    if (has_alt_prediction) j["predicted_exponent_alt"] = predicted_exponent_alt;
    j["inconclusive"] = inconclusive;
    j["eps_range"] = {eps_range.first, eps_range.second};
    j["pure_model"] = {{"slope", slope_pure}, {"r2", r2_pure}};
    j["log_model"] = {{"slope", slope_log}, {"r2", r2_log}};
    return j.dump(2);
}

} // namespace fraclab
