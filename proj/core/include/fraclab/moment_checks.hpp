#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace fraclab {

/// Gaussian reduction identity (conditional-variance form):
///   int_{R^n} g(v_1) exp(-v^T Sigma v / 2) dv
///     = (2 pi)^{(n-1)/2} det(Sigma)^{-1/2} int g(v/sigma_1) e^{-v^2/2} dv,
/// sigma_1^2 = Sigma_11 - Sigma_12 Sigma_22^{-1} Sigma_21.
struct IdentityCheck {
    double lhs = 0, rhs = 0, residual = 0;
    double mc_se = 0; // 0 for quadrature routes
    bool pass = false;
};

/// Quadrature route, n = 1 or 2. g may have a kink at 0 (|v|^p style).
IdentityCheck verify_cd1982_quadrature(const Eigen::MatrixXd& sigma,
                                       const std::function<double(double)>& g, double tol);

/// Monte Carlo route, n <= 4: v ~ N(0, Sigma^{-1}) importance sampling;
/// passes when |lhs - rhs| <= max(tol, 4 SE).
IdentityCheck verify_cd1982_mc(const Eigen::MatrixXd& sigma,
                               const std::function<double(double)>& g,
                               std::size_t n_samples, std::uint64_t seed, double tol);

/// int_0^1 r^{p-1} (A + r^gamma)^{-beta} dr against its small-A asymptote
/// (A^{p/gamma - beta}, log(1 + A^{-1/gamma}), or 1 by regime); the ratio
/// must stay in a fixed positive band over the A schedule.
struct AsymptoteBandReport {
    std::vector<double> a_values, integrals, asymptotes, ratios;
    int regime = 0; // +1: beta*gamma > p, 0: equal, -1: less
    double ratio_min = 0, ratio_max = 0;
    bool pass = false;
};
AsymptoteBandReport verify_lmaxiao(double beta, double gamma, double p,
                                   const std::vector<double>& a_schedule);

/// Simplex-shell bound: int_{D^m_{T,h}} prod u_j^{-a_j} du <=
/// prod Gamma(1-a_j) / Gamma(m+1-sum a_j) * h^{sum (1-a_j)}.
/// m = 1 analytically, m >= 2 by importance-sampled MC with CLT margin.
struct SimplexBoundReport {
    double estimate = 0, se = 0, bound = 0;
    bool pass = false; // estimate <= bound + 3 SE
};
SimplexBoundReport verify_lmahx2020(const std::vector<double>& a, double T, double h,
                                    std::size_t n_samples, std::uint64_t seed);

/// Two-sided Gaussian moment closed form (k <= 3):
///   (-1)^k/(2 pi) int y2^k y1^k exp(-(a y2^2 + 2b y1 y2 + c y1^2)/2
///                                   - eps(y1^2+y2^2)/2) dy
///   = sum_{l even} c_{k,l} b^{k-l} / ((a+eps)(c+eps) - b^2)^{(2k-l+1)/2}.
/// Returns the relative residual of quadrature vs the closed form.
double verify_gaussian_moment_closed_form(int k, double a, double b, double c, double eps);

} // namespace fraclab
