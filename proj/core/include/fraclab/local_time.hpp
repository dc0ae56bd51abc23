#pragma once

#include <span>
#include <string>
#include <vector>

#include "fraclab/gp_sim.hpp"
#include "fraclab/heat_kernel.hpp"
#include "fraclab/multi_index.hpp"
#include "fraclab/rate_fit.hpp"

namespace fraclab {

struct LtEstimate {
    double value = 0;
    std::vector<double> alpha;
    Sign sign = Sign::Plus;
    double eps = 0;
    std::vector<double> x;
    double T = 0;
    std::size_t path_id = 0;
    std::string dt_rule = "trapezoid";
};

/// Path-level estimator of L^(alpha)_{sign,eps}(T, x): a trapezoidal Riemann
/// sum of the product heat-kernel derivative along the path. Kernel profiles
/// are cached per distinct order at construction; evaluation is O(grid).
class LocalTimeEvaluator {
public:
    LocalTimeEvaluator(const PathSet& paths, MultiIndex alpha, Sign sign);

    const PathSet& paths() const noexcept { return *paths_; }
    const MultiIndex& alpha() const noexcept { return alpha_; }

    LtEstimate lt_eps(std::size_t path_id, double eps, std::span<const double> x,
                      double T) const;

    /// All paths at once (deterministic chunked parallel loop).
    std::vector<double> lt_all_paths(double eps, std::span<const double> x, double T) const;

private:
    const PathSet* paths_;
    MultiIndex alpha_;
    Sign sign_;
    std::vector<HeatKernelProfile> profiles_; // one per component order
};

/// One-shot wrapper.
LtEstimate lt_eps(const PathSet& paths, std::size_t path_id, const MultiIndex& alpha,
                  Sign sign, double eps, std::span<const double> x, double T);

struct MomentStats {
    double mean = 0, second_moment = 0;
    double mean_se = 0, second_se = 0;
};
MomentStats moment_stats(const std::vector<double>& values);

enum class Verdict { Stabilizing, Diverging, Inconclusive };
std::string to_string(Verdict v);

struct ConvergenceOptions {
    double growth_factor_per_halving = 1.5; // Diverging threshold
    double stabilize_tol = 0.05;            // relative pairwise-L2 threshold
};

struct ConvergenceDiag {
    std::vector<double> eps_schedule;
    std::vector<double> mc_mean, mc_second_moment, mc_second_se;
    std::vector<double> pairwise_l2; // E|L_{eps_i} - L_{eps_{i+1}}|^2
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;
};

/// Monte Carlo eps-convergence diagnostic across a strictly decreasing
/// schedule: Stabilizing when the pairwise L2 differences fall below
/// tol * E|L|^2 and shrink; Diverging when the second moment grows by more
/// than the threshold factor per eps-halving over the last three rungs;
/// Inconclusive otherwise (including MC bars too wide to discriminate).
ConvergenceDiag eps_convergence(const PathSet& paths, const MultiIndex& alpha, Sign sign,
                                std::span<const double> x, double T,
                                const std::vector<double>& eps_schedule,
                                const ConvergenceOptions& opts = {});

struct HolderFit {
    RateFit fit;            // log E|dL|^m vs log h
    double theta_hat = 0;   // slope / m
    double predicted = 0;   // exponent bound from the regularity statement
    bool inconclusive = false;
};

/// Time-regularity exponent: regression of log E|L(T+h) - L(T)|^m on log h
/// over the offsets; theta_hat = slope/m compared against 1 - H(|alpha|+d).
HolderFit holder_exponent_time(const PathSet& paths, const MultiIndex& alpha, Sign sign,
                               std::span<const double> x, double eps, double t_base,
                               const std::vector<double>& offsets, int m = 2);

/// Space-regularity exponent along coordinate 0: offsets are |z| scales;
/// prediction window cap is min(1, (1/H - 2|alpha| - d)/2).
HolderFit holder_exponent_space(const PathSet& paths, const MultiIndex& alpha, Sign sign,
                                std::span<const double> x0, double eps, double T,
                                const std::vector<double>& offsets, int m = 2);

struct AlphaContinuityReport {
    std::vector<double> distances; // E|L^beta - L^alpha|^2 per beta
    std::vector<double> ses;
    bool decreasing_within_bars = false;
};

/// E|L^(beta) - L^(alpha)|^2 for a sequence beta -> alpha; all orders must
/// satisfy the existence condition H(2|beta|+d) < 1.
AlphaContinuityReport alpha_continuity_check(const PathSet& paths, const MultiIndex& alpha,
                                             const std::vector<MultiIndex>& betas, Sign sign,
                                             std::span<const double> x, double T, double eps);

} // namespace fraclab
