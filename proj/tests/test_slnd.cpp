#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fraclab/errors.hpp"
#include "fraclab/rng.hpp"
#include "fraclab/slnd.hpp"

using namespace fraclab;

TEST_CASE("conditional variance oracles for Brownian motion") {
    const auto bm = ProcessKind::fbm(0.5);
    SUBCASE("bridge") {
        const auto r = cond_var(bm, 0.5, {0.25, 0.75});
        CHECK(r.value == doctest::Approx(0.125).epsilon(1e-12));
        CHECK(r.ratio == doctest::Approx(0.5).epsilon(1e-10));
    }
    SUBCASE("Markov: conditioners in the past") {
        const auto r = cond_var(bm, 2.0, {0.3, 0.9, 1.5});
        CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12)); // t - max s
        CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("empty conditioner set") {
        const auto r = cond_var(bm, 0.7, {});
        CHECK(r.value == doctest::Approx(0.7).epsilon(1e-14));
    }
    SUBCASE("singular set") {
        CHECK_THROWS_AS(cond_var(bm, 1.0, {0.5, 0.5}), std::domain_error);
    }
}

TEST_CASE("adding a conditioner never increases the conditional variance") {
    rng::Stream stream(41, 0);
    for (const auto& kind : {ProcessKind::fbm(0.35), ProcessKind::subfbm(0.6),
                             ProcessKind::bifbm(0.5, 0.9)}) {
        for (int rep = 0; rep < 40; ++rep) {
            const double t = 0.3 + 2.0 * stream.next_uniform();
            std::vector<double> s;
            double prev = cond_var(kind, t, s).value;
            for (int k = 0; k < 4; ++k) {
                double cand = 0.05 + 2.5 * stream.next_uniform();
                if (std::abs(cand - t) < 1e-3) cand += 0.01;
                s.push_back(cand);
                const double cur = cond_var(kind, t, s).value;
                CHECK(cur <= prev * (1.0 + 1e-9) + 1e-12);
                prev = cur;
            }
        }
    }
}

TEST_CASE("conditional variance scales like lambda^{2H}") {
    rng::Stream stream(43, 1);
    for (const auto& kind : {ProcessKind::fbm(0.3), ProcessKind::subfbm(0.7),
                             ProcessKind::bifbm(0.6, 0.8)}) {
        const double h2 = 2.0 * kind.hurst();
        for (int rep = 0; rep < 20; ++rep) {
            const double t = 0.4 + stream.next_uniform();
            const std::vector<double> s = {t * 0.7, t * 1.3, t * 0.2};
            const double lambda = 0.5 + 3.0 * stream.next_uniform();
            std::vector<double> ls;
            for (double v : s) ls.push_back(lambda * v);
            const double base = cond_var(kind, t, s).value;
            const double scaled = cond_var(kind, lambda * t, ls).value;
            CHECK(scaled == doctest::Approx(std::pow(lambda, h2) * base).epsilon(1e-9));
        }
    }
}

TEST_CASE("slnd scan certifies the listed kinds") {
    SUBCASE("Brownian worst case is the symmetric bridge") {
        const auto c = slnd_scan(ProcessKind::fbm(0.5), 8, 200, 1);
        CHECK(c.kappa >= 0.5 - 1e-9);
        CHECK(c.kappa == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(c.big_k == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(c.source == SlndConstants::Source::Empirical);
    }
    SUBCASE("fractional kinds stay positive") {
        for (const auto& kind : {ProcessKind::fbm(0.3), ProcessKind::fbm(0.7),
                                 ProcessKind::bifbm(0.5, 0.8), ProcessKind::subfbm(0.7)}) {
            const auto c = slnd_scan(kind, 8, 150, 2);
            CAPTURE(kind.name());
            CHECK(c.kappa > 0.0);
            CHECK(c.big_k >= c.kappa - 1e-12);
        }
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(slnd_scan(ProcessKind::fbm(0.5), 32, 10, 1), PreconditionError);
    }
}

TEST_CASE("slnd constants json round trip") {
    const auto c = slnd_scan(ProcessKind::fbm(0.5), 4, 50, 3);
    const auto back = SlndConstants::from_json(c.to_json());
    CHECK(back.kappa == doctest::Approx(c.kappa));
    CHECK(back.big_k == doctest::Approx(c.big_k));
    CHECK(back.source == SlndConstants::Source::Empirical);
}

TEST_CASE("lamperti covariance r(t)") {
    SUBCASE("value at zero is Var(Z_1)") {
        CHECK(stationary_transform_r(ProcessKind::subfbm(0.5), 0.0) ==
              doctest::Approx(1.0).epsilon(1e-13));
        CHECK(stationary_transform_r(ProcessKind::fbm(0.3), 0.0) ==
              doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("evenness") {
        rng::Stream stream(47, 2);
        for (const auto& kind : {ProcessKind::fbm(0.4), ProcessKind::subfbm(0.7)}) {
            for (int i = 0; i < 50; ++i) {
                const double t = 6.0 * (stream.next_uniform() - 0.5);
                CHECK(stationary_transform_r(kind, t) ==
                      doctest::Approx(stationary_transform_r(kind, -t)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("fbm r(t) matches the direct covariance") {
        const auto kind = ProcessKind::fbm(0.65);
        for (double t : {0.1, 0.5, 1.0, 3.0}) {
            const double direct = std::exp(-0.65 * t) * cov(kind, 1.0, std::exp(t));
            CHECK(stationary_transform_r(kind, t) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
    SUBCASE("large-argument evaluation is finite and decaying") {
        for (const auto& kind : {ProcessKind::fbm(0.7), ProcessKind::subfbm(0.7),
                                 ProcessKind::bifbm(0.6, 0.9)}) {
            double prev = stationary_transform_r(kind, 10.0);
            for (double t : {20.0, 40.0, 80.0}) {
                const double r = stationary_transform_r(kind, t);
                CHECK(std::isfinite(r));
                CHECK(r <= prev * (1.0 + 1e-9) + 1e-300);
                prev = r;
            }
        }
    }
}

TEST_CASE("spectral lower bound check") {
    std::vector<double> lambdas = {0.0, 0.1, 1.0, 10.0, 100.0, 1000.0};
    SUBCASE("sub-fbm 0.7") {
        const auto rep = spectral_lower_check(ProcessKind::subfbm(0.7), lambdas);
        CHECK(rep.nonnegative_r);
        CHECK(rep.decreasing_r);
        CHECK(rep.transform_positive);
        CHECK(rep.c_hat > 0.0);
        CHECK(rep.pass);
    }
    SUBCASE("bifbm 0.6 0.9") {
        const auto rep = spectral_lower_check(ProcessKind::bifbm(0.6, 0.9), lambdas);
        CHECK(rep.c_hat > 0.0);
        CHECK(rep.pass);
    }
    SUBCASE("lambda = 0 is the integral of r") {
        const auto rep = spectral_lower_check(ProcessKind::subfbm(0.6), {0.0});
        CHECK(rep.entries.at(0).transform > 0.0);
    }
}
