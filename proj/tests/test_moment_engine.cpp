#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "fraclab/errors.hpp"
#include "fraclab/local_time.hpp"
#include "fraclab/moment.hpp"
#include "fraclab/moment_checks.hpp"
#include "fraclab/quad.hpp"
#include "fraclab/rng.hpp"

using namespace fraclab;
namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// brute-force J by quadrant-split tensor quadrature in (v1, v2), with the
// v = w^2 substitution softening the |v|^alpha corner
double brute_j(double alpha, double x, Sign sign, const TwoTimeStats& st) {
    const double l1 = 14.0 * std::sqrt(st.C / st.Delta);
    const double l2 = 14.0 * std::sqrt(st.A / st.Delta);
    auto f = [&](double v1, double v2) -> std::complex<double> {
        const double q = st.A * v1 * v1 + 2.0 * st.B * v1 * v2 + st.C * v2 * v2;
        return signed_power(v1, alpha, sign) * signed_power(v2, alpha, sign) *
               std::polar(1.0, (v1 + v2) * x) * std::exp(-0.5 * q);
    };
    std::complex<double> total = 0.0;
    const int panels = 8, npts = 18;
    const double w1 = std::sqrt(l1), w2 = std::sqrt(l2);
    for (int s1 = -1; s1 <= 1; s1 += 2)
        for (int s2 = -1; s2 <= 1; s2 += 2)
            for (int i = 0; i < panels; ++i)
                for (int j = 0; j < panels; ++j) {
                    const double a1 = w1 * i / panels, b1 = w1 * (i + 1) / panels;
                    const double a2 = w2 * j / panels, b2 = w2 * (j + 1) / panels;
                    total += quad::gauss_on_c(
                        [&](double u1) {
                            return quad::gauss_on_c(
                                [&](double u2) {
                                    return f(s1 * u1 * u1, s2 * u2 * u2) * 4.0 * u1 * u2;
                                },
                                a2, b2, npts);
                        },
                        a1, b1, npts);
                }
    return total.real();
}
} // namespace

TEST_CASE("j kernel: unit integrand case alpha = 0, x = 0") {
    const auto kind = ProcessKind::fbm(0.5);
    const auto st = two_time_stats(kind, 2.0, 1.0, 0.1);
    for (auto variant : {JVariant::J, JVariant::JHat, JVariant::JTilde}) {
        const auto jv = j_kernel(variant, 0.0, 0.0, 2.0, 1.0, 0.1, kind, Sign::Plus);
        CHECK(jv.value.real() ==
              doctest::Approx(st.G / std::sqrt(st.D) * kTwoPi).epsilon(1e-10));
        CHECK(jv.value.imag() == 0.0);
    }
}

TEST_CASE("j kernel matches brute-force quadrature") {
    rng::Stream stream(61, 0);
    for (const auto& kind : {ProcessKind::fbm(0.4), ProcessKind::subfbm(0.7)}) {
        for (int rep = 0; rep < 6; ++rep) {
            const double s = 0.3 + stream.next_uniform();
            const double t = s + 0.1 + stream.next_uniform();
            const double eps = 0.02 + 0.2 * stream.next_uniform();
            const double alpha = 2.4 * stream.next_uniform();
            const double x = (rep % 2 == 0) ? 0.0 : 1.4 * (stream.next_uniform() - 0.5);
            const auto st = two_time_stats(kind, t, s, eps);
            const double ref = brute_j(alpha, x, Sign::Plus, st);
            const auto got = j_kernel(JVariant::J, alpha, x, t, s, eps, kind, Sign::Plus);
            CAPTURE(kind.name());
            CAPTURE(alpha);
            CAPTURE(x);
            CHECK(got.value.real() ==
                  doctest::Approx(ref).epsilon(5e-7));
        }
    }
}

TEST_CASE("integer-order j at x = 0 equals the factorial closed form") {
    const auto kind = ProcessKind::subfbm(0.6);
    const auto st = two_time_stats(kind, 1.7, 0.8, 0.05);
    for (int k : {0, 1, 2, 3}) {
        const auto jv = j_kernel(JVariant::J, k, 0.0, 1.7, 0.8, 0.05, kind, Sign::Plus);
        CHECK(jv.value.real() ==
              doctest::Approx(j_closed_form_integer(k, st)).epsilon(1e-10));
    }
    // c_{1,0} = 1: single-term case
    const double expect = kTwoPi * st.B / std::pow(st.Delta, 1.5);
    CHECK(j_closed_form_integer(1, st) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("jtilde closed form against the Gaussian-moment oracle") {
    const auto kind = ProcessKind::fbm(0.45);
    const auto st = two_time_stats(kind, 1.2, 0.5, 0.1);
    const double alpha = 0.5, x = 1.0;
    const auto jv = j_kernel(JVariant::JTilde, alpha, x, 1.2, 0.5, 0.1, kind, Sign::Plus);
    // int |u|^{2 alpha} e^{-u^2/2} du = 2 for alpha = 1/2
    const double expect = st.G / std::pow(st.D, alpha + 0.5) * 2.0 * std::sqrt(kTwoPi) *
                          std::exp(-0.5 * st.G * st.G * x * x);
    CHECK(jv.value.real() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("second moment: large-eps limit") {
    // kernel flattening: E|L|^2 -> T^2 p-mass with A ~ C ~ eps
    const MultiIndex alpha({0.0});
    const double x[1] = {0.0};
    const double T = 1.0, eps = 500.0;
    const double got = second_moment(alpha, x, T, eps, ProcessKind::fbm(0.5), Sign::Plus);
    const double expect = T * T / (kTwoPi * eps); // (T p_eps(0))^2
    CHECK(got == doctest::Approx(expect).epsilon(0.01));
}

TEST_CASE("second moment: reflection symmetry between signs") {
    const MultiIndex alpha({0.7});
    const double T = 1.0, eps = 0.05;
    const auto kind = ProcessKind::subfbm(0.6);
    for (double xv : {0.0, 0.4, -1.1}) {
        const double xp[1] = {xv};
        const double xm[1] = {-xv};
        const double plus = second_moment(alpha, xp, T, eps, kind, Sign::Plus);
        const double minus = second_moment(alpha, xm, T, eps, kind, Sign::Minus);
        CHECK(std::abs(plus - minus) <= 1e-8 * std::abs(plus));
    }
}

TEST_CASE("second moment: closed-form route consistency for integer orders") {
    const MultiIndex alpha({1.0});
    const double x[1] = {0.0};
    const auto kind = ProcessKind::fbm(0.5);
    MomentOptions closed;
    closed.j_route = MomentOptions::JRoute::ClosedFormInteger;
    for (double eps : {0.2, 0.02}) {
        const double generic = second_moment(alpha, x, 1.0, eps, kind, Sign::Plus);
        const double cf = second_moment(alpha, x, 1.0, eps, kind, Sign::Plus, closed);
        CHECK(std::abs(generic - cf) <= 1e-6 * std::abs(cf));
    }
    const double xnz[1] = {0.5};
    CHECK_THROWS_AS(second_moment(alpha, xnz, 1.0, 0.1, kind, Sign::Plus, closed),
                    PreconditionError);
}

TEST_CASE("second moment stabilizes on the existence side") {
    const MultiIndex alpha({0.0});
    const double x[1] = {0.0};
    const auto kind = ProcessKind::fbm(0.5); // H(0+1) = 0.5 < 1
    double prev_gap = 1e300, prev = 0.0;
    bool first = true;
    for (double eps : {0.04, 0.02, 0.01, 0.005, 0.0025}) {
        const double v = second_moment(alpha, x, 1.0, eps, kind, Sign::Plus);
        if (!first) {
            const double gap = std::abs(v - prev);
            CHECK(gap < prev_gap);
            prev_gap = gap;
        }
        prev = v;
        first = false;
    }
}

TEST_CASE("second moment grows monotonically in the divergence regimes") {
    const double x[1] = {0.0};
    for (const auto& [alpha_v, kindH] : {std::pair{1.0, 0.5}, std::pair{0.5, 0.5}}) {
        const MultiIndex alpha({alpha_v});
        const auto kind = ProcessKind::fbm(kindH);
        double prev = 0.0;
        for (double eps : {0.1, 0.05, 0.025, 0.0125, 0.00625}) {
            const double v = second_moment(alpha, x, 1.0, eps, kind, Sign::Plus);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("part I: sandwich and rate for (H, d, alpha) = (0.5, 1, 1)") {
    const MultiIndex alpha({1.0});
    const auto kind = ProcessKind::fbm(0.5);
    std::vector<double> eps_ladder;
    for (int k = 0; k < 8; ++k) eps_ladder.push_back(0.1 * std::pow(0.5, k));

    const auto fit = rate_fit_part1(alpha, kind, 1.0, eps_ladder);
    CHECK(fit.predicted_exponent == doctest::Approx(-0.5));
    CHECK(std::abs(fit.slope - fit.predicted_exponent) < 0.15);
    CHECK(fit.r2 >= 0.95);

    // sandwich: |E|L|^2 - I_hat| grows strictly slower than I_hat
    const double x[1] = {0.0};
    std::vector<double> gaps, hats;
    for (double eps : eps_ladder) {
        const double full = second_moment(alpha, x, 1.0, eps, kind, Sign::Plus);
        const double hat = i_hat_moment(alpha, 1.0, eps, kind, Sign::Plus);
        gaps.push_back(std::abs(full - hat));
        hats.push_back(hat);
    }
    const auto gap_fit = fit_loglog(eps_ladder, gaps);
    const auto hat_fit = fit_loglog(eps_ladder, hats);
    CHECK(gap_fit.slope > hat_fit.slope + 0.05); // strictly smaller growth order
}

TEST_CASE("part I boundary case prefers the log model") {
    const MultiIndex alpha({0.5});
    const auto kind = ProcessKind::fbm(0.5); // H(2a+d) = 1, Hd < 1
    std::vector<double> eps_ladder;
    for (int k = 0; k < 8; ++k) eps_ladder.push_back(0.1 * std::pow(0.5, k));
    const auto fit = rate_fit_part1(alpha, kind, 1.0, eps_ladder);
    CHECK(fit.log_factor_detected);
    CHECK(fit.predicted_exponent == doctest::Approx(0.0));
    // pure-log signature: increments per eps-halving approach a constant
    const double x[1] = {0.0};
    std::vector<double> vals;
    for (double eps : eps_ladder)
        vals.push_back(second_moment(alpha, x, 1.0, eps, kind, Sign::Plus));
    const double inc_a = vals[6] - vals[5];
    const double inc_b = vals[7] - vals[6];
    CHECK(inc_b == doctest::Approx(inc_a).epsilon(0.05));
}

TEST_CASE("part I preconditions") {
    std::vector<double> ladder = {0.1, 0.05, 0.025, 0.0125};
    CHECK_THROWS_AS(
        rate_fit_part1(MultiIndex({0.5}), ProcessKind::fbm(0.25), 1.0, ladder),
        PreconditionError); // existence side
    CHECK_THROWS_AS(
        rate_fit_part1(MultiIndex({0.0, 0.0}), ProcessKind::fbm(0.7), 1.0, ladder),
        PreconditionError); // Hd > 1
}

TEST_CASE("part II wedge channel fit for (H, d, alpha) = (0.6, 2, (0,0))") {
    const MultiIndex alpha({0.0, 0.0});
    const auto kind = ProcessKind::fbm(0.6);
    SlndConstants consts;
    consts.kappa = 0.5;
    consts.big_k = 1.0;
    std::vector<double> ladder;
    for (int k = 0; k < 8; ++k) ladder.push_back(0.05 * std::pow(0.5, k));
    const auto fit = rate_fit_part2(alpha, kind, 1.0, ladder, consts);
    CHECK(fit.fit.predicted_exponent == doctest::Approx(-0.2));
    CHECK(fit.fit.predicted_exponent_alt == doctest::Approx(-1.0 / 3.0));
    // one-sided contract from the operation: growth at least the displayed rate
    CHECK(fit.lower_bound_ok);
    // the channel diverges and the measured slope brackets the via-lemma rate
    CHECK(fit.fit.slope < -0.2);
    CHECK(fit.fit.r2 > 0.9);
}

TEST_CASE("part II preconditions") {
    SlndConstants consts;
    consts.kappa = 0.5;
    consts.big_k = 1.0;
    std::vector<double> ladder = {0.1, 0.05, 0.025, 0.0125};
    CHECK_THROWS_AS(rate_fit_part2(MultiIndex({0.0}), ProcessKind::fbm(0.5), 1.0, ladder,
                                   consts),
                    PreconditionError); // Hd <= 1
}

TEST_CASE("part III: (H, d, alpha, x) = (0.6, 1, 1, 0.5) on sub-fbm") {
    const MultiIndex alpha({1.0});
    const double x[1] = {0.5};
    const auto kind = ProcessKind::subfbm(0.6);
    std::vector<double> ladder;
    for (int k = 0; k < 7; ++k) ladder.push_back(0.02 * std::pow(0.5, k));
    const auto fit = rate_fit_part3(alpha, x, kind, 1.0, ladder);
    CHECK(fit.fit.predicted_exponent == doctest::Approx(1.0 / 1.2 - 1.5));
    CHECK(std::abs(fit.fit.slope - fit.fit.predicted_exponent) < 0.15);
    CHECK_FALSE(fit.exploratory);
    // correction term grows strictly slower than the main channel
    CHECK(fit.correction_slope > fit.fit.slope + 0.01);
}

TEST_CASE("part III rejects the open all-fractional case unless exploratory") {
    const MultiIndex alpha({0.5});
    const double x[1] = {0.5};
    const auto kind = ProcessKind::subfbm(0.8);
    std::vector<double> ladder = {0.05, 0.025, 0.0125, 0.00625};
    CHECK_THROWS_AS(rate_fit_part3(alpha, x, kind, 1.0, ladder), PreconditionError);
    const auto fit = rate_fit_part3(alpha, x, kind, 1.0, ladder, /*exploratory=*/true);
    CHECK(fit.exploratory);
}

TEST_CASE("MC cross validation of the deterministic second moment") {
    const MultiIndex alpha({0.5});
    const double x[1] = {0.0};
    const auto kind = ProcessKind::fbm(0.25);
    const double eps = 0.02, T = 1.0;
    const double quad_val = second_moment(alpha, x, T, eps, kind, Sign::Plus);

    const auto ps =
        simulate_fgn_circulant(kind, TimeGrid::regular(T, 1024), 1, 2500, 37);
    LocalTimeEvaluator eval(ps, alpha, Sign::Plus);
    const auto vals = eval.lt_all_paths(eps, x, T);
    const auto st = moment_stats(vals);
    // discretization allowance via step halving on a path subset
    const auto ps2 = simulate_fgn_circulant(kind, TimeGrid::regular(T, 2048), 1, 600, 37);
    LocalTimeEvaluator eval2(ps2, alpha, Sign::Plus);
    const auto st2 = moment_stats(eval2.lt_all_paths(eps, x, T));
    const double disc = std::abs(st2.second_moment - st.second_moment);
    CHECK(std::abs(st.second_moment - quad_val) <=
          4.0 * st.second_se + disc + 0.02 * quad_val);
}

TEST_CASE("cd1982 identity") {
    SUBCASE("n = 1, g = 1: both sides sqrt(2 pi / Var)") {
        Eigen::MatrixXd sigma(1, 1);
        sigma << 2.5;
        const auto res =
            verify_cd1982_quadrature(sigma, [](double) { return 1.0; }, 1e-10);
        CHECK(res.pass);
        CHECK(res.lhs == doctest::Approx(std::sqrt(kTwoPi / 2.5)).epsilon(1e-10));
    }
    SUBCASE("n = 2, g = |v|^{1/2}, random SPD") {
        rng::Stream stream(67, 1);
        for (int rep = 0; rep < 5; ++rep) {
            Eigen::MatrixXd m(2, 2);
            const double a = 0.5 + stream.next_uniform(), b = 0.5 + stream.next_uniform();
            const double c = (stream.next_uniform() - 0.5);
            m << a, 0, c, b; // random full-rank factor
            Eigen::MatrixXd sigma = m * m.transpose() + 0.2 * Eigen::MatrixXd::Identity(2, 2);
            const auto res = verify_cd1982_quadrature(
                sigma, [](double v) { return std::sqrt(std::abs(v)); }, 1e-6);
            CAPTURE(rep);
            CHECK(res.pass);
            CHECK(res.residual <= 1e-6);
        }
    }
    SUBCASE("n = 3, g = v^2, MC within CLT bars") {
        Eigen::MatrixXd sigma(3, 3);
        sigma << 2.0, 0.3, 0.1, 0.3, 1.5, -0.2, 0.1, -0.2, 1.0;
        const auto res =
            verify_cd1982_mc(sigma, [](double v) { return v * v; }, 2000000, 5, 1e-3);
        CHECK(res.pass);
        CHECK(res.mc_se > 0.0);
    }
}

TEST_CASE("power-law integral asymptote bands") {
    const std::vector<double> a_sched = {0.3, 0.1, 0.03, 0.01, 0.003, 0.001};
    SUBCASE("beta gamma < p: ratio tends to a constant") {
        const auto rep = verify_lmaxiao(1.0, 1.0, 2.0, a_sched);
        CHECK(rep.regime == -1);
        CHECK(rep.pass);
    }
    SUBCASE("beta gamma = p: exact log antiderivative") {
        const auto rep = verify_lmaxiao(1.0, 1.0, 1.0, a_sched);
        CHECK(rep.regime == 0);
        for (std::size_t i = 0; i < rep.a_values.size(); ++i)
            CHECK(rep.integrals[i] ==
                  doctest::Approx(std::log1p(1.0 / rep.a_values[i])).epsilon(1e-9));
        CHECK(rep.pass);
    }
    SUBCASE("beta gamma > p: ratio to A^{p/gamma - beta} bounded") {
        const auto rep = verify_lmaxiao(2.0, 1.0, 1.0, a_sched);
        CHECK(rep.regime == +1);
        CHECK(rep.pass);
    }
}

TEST_CASE("simplex shell bound") {
    SUBCASE("m = 1 analytic") {
        const auto rep = verify_lmahx2020({0.4}, 1.0, 0.5, 0, 0);
        CHECK(rep.pass);
    }
    SUBCASE("near-volume sanity a_i = 0.01") {
        const auto rep = verify_lmahx2020({0.01, 0.01, 0.01}, 1.0, 0.3, 200000, 3);
        CHECK(rep.pass);
        CHECK(rep.estimate > 0.0);
    }
    SUBCASE("h-scaling slope is sum(1 - a_i)") {
        const std::vector<double> a = {0.3, 0.6};
        // the bound's exponent is attained when the shell start T rides with h
        std::vector<double> hs, vals;
        for (double h : {0.4, 0.2, 0.1, 0.05}) {
            const auto rep = verify_lmahx2020(a, h, h, 400000, 7);
            hs.push_back(h);
            vals.push_back(rep.estimate);
        }
        std::reverse(hs.begin(), hs.end());
        std::reverse(vals.begin(), vals.end());
        const auto fit = fit_loglog(hs, vals);
        CHECK(fit.slope == doctest::Approx(1.1).epsilon(0.08));
    }
}

TEST_CASE("two-sided Gaussian moment closed form") {
    SUBCASE("k = 0 normalization") {
        CHECK(verify_gaussian_moment_closed_form(0, 1.3, 0.4, 0.9, 0.2) < 1e-10);
    }
    SUBCASE("k = 1 single term") {
        CHECK(verify_gaussian_moment_closed_form(1, 2.0, -0.7, 1.1, 0.05) < 1e-9);
    }
    SUBCASE("k = 2, 3 random SPD inputs") {
        rng::Stream stream(71, 2);
        for (int rep = 0; rep < 8; ++rep) {
            const double a = 0.5 + 2.0 * stream.next_uniform();
            const double c = 0.5 + 2.0 * stream.next_uniform();
            const double b = (2.0 * stream.next_uniform() - 1.0) * 0.8 * std::sqrt(a * c);
            const double eps = 0.3 * stream.next_uniform();
            CAPTURE(a);
            CAPTURE(b);
            CAPTURE(c);
            CHECK(verify_gaussian_moment_closed_form(2, a, b, c, eps) < 1e-8);
            CHECK(verify_gaussian_moment_closed_form(3, a, b, c, eps) < 1e-8);
        }
    }
    SUBCASE("degenerate form rejected") {
        CHECK_THROWS_AS(verify_gaussian_moment_closed_form(1, 1.0, 2.0, 1.0, 0.0),
                        std::domain_error);
    }
}
