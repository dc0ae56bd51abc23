#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "fraclab/errors.hpp"
#include "fraclab/frac_checks.hpp"
#include "fraclab/heat_kernel.hpp"
#include "fraclab/marchaud.hpp"
#include "fraclab/multi_index.hpp"
#include "fraclab/rng.hpp"

using namespace fraclab;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("signed power point values") {
    const auto v1 = signed_power(1.0, 0.5, Sign::Plus);
    CHECK(v1.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(v1.imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

    const auto v2 = signed_power(-2.0, 1.0, Sign::Plus);
    CHECK(v2.real() == doctest::Approx(0.0));
    CHECK(v2.imag() == doctest::Approx(-2.0)); // equals i * (-2)

    CHECK(signed_power(0.0, 0.7, Sign::Plus) == std::complex<double>(0.0, 0.0));
    CHECK(signed_power(0.0, 0.7, Sign::Minus) == std::complex<double>(0.0, 0.0));
    CHECK(signed_power(0.0, 0.0, Sign::Plus) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("signed power conjugate symmetry and modulus") {
    rng::Stream stream(23, 0);
    for (int i = 0; i < 1000; ++i) {
        const double x = 6.0 * (stream.next_uniform() - 0.5);
        const double a = 3.0 * stream.next_uniform();
        const auto plus = signed_power(x, a, Sign::Plus);
        const auto minus = signed_power(x, a, Sign::Minus);
        CHECK(plus.real() == doctest::Approx(minus.real()).epsilon(1e-14));
        CHECK(plus.imag() == doctest::Approx(-minus.imag()).epsilon(1e-14));
        CHECK(std::abs(plus) ==
              doctest::Approx(std::pow(std::abs(x), a)).epsilon(1e-13));
    }
}

TEST_CASE("multi index derived quantities") {
    CHECK(MultiIndex::star(0.0) == 0.0);
    CHECK(MultiIndex::star(0.5) == doctest::Approx(0.5));
    CHECK(MultiIndex::star(1.0) == doctest::Approx(1.0));
    CHECK(MultiIndex::star(2.0) == doctest::Approx(1.0));
    CHECK(MultiIndex::star(2.5) == doctest::Approx(0.5));

    const MultiIndex idx({1.0, 0.5, 0.0});
    CHECK(idx.total() == doctest::Approx(1.5));
    CHECK(idx.integer_components() == std::vector<std::size_t>{0, 2});
    CHECK(idx.integer_component_sum() == doctest::Approx(1.0));
    CHECK_THROWS_AS(MultiIndex({-0.1}), std::domain_error);

    rng::Stream stream(29, 1);
    for (int i = 0; i < 500; ++i) {
        const double a = 5.0 * stream.next_uniform();
        const double st = MultiIndex::star(a);
        CHECK(st >= 0.0);
        CHECK(st <= 1.0);
        CHECK((st == 0.0) == (a == 0.0));
    }
}

TEST_CASE("marchaud integral on cosine matches the spectral value") {
    // D^{1/2}_+ cos at 0 = cos(0 + pi/4)
    const double got = marchaud_integral([](double y) { return std::cos(y); }, 0.5, 0.0,
                                         Sign::Plus);
    CHECK(got == doctest::Approx(std::sqrt(0.5)).epsilon(1e-7));
}

TEST_CASE("marchaud integral of a constant vanishes") {
    for (double a : {0.2, 0.5, 0.8})
        CHECK(marchaud_integral([](double) { return 3.7; }, a, 1.3, Sign::Minus) ==
              doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("marchaud integral vs spectral on a Gaussian") {
    const double alpha = 0.25;
    const std::size_t n = 4096;
    const double lo = -40.96, h = 0.02; // grid hits x = 1.0 exactly
    std::vector<double> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xx = lo + h * i;
        samples[i] = std::exp(-0.5 * xx * xx);
    }
    const auto spec = marchaud_spectral(samples, h, alpha, Sign::Plus);
    const auto at = [&](double xx) {
        return static_cast<std::size_t>(std::llround((xx - lo) / h));
    };
    const double direct = marchaud_integral(
        [](double y) { return std::exp(-0.5 * y * y); }, alpha, 1.0, Sign::Plus);
    CHECK(direct == doctest::Approx(spec[at(1.0)].real()).epsilon(1e-6));
    CHECK(std::abs(spec[at(1.0)].imag()) < 1e-8);
}

TEST_CASE("marchaud integral rejects alpha outside (0,1)") {
    CHECK_THROWS_AS(marchaud_integral([](double) { return 0.0; }, 1.2, 0.0, Sign::Plus),
                    std::domain_error);
}

TEST_CASE("marchaud spectral basics") {
    const std::size_t n = 1024;
    const double h = 0.02;
    std::vector<double> gauss(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xx = (static_cast<double>(i) - 512.0) * h;
        gauss[i] = std::exp(-xx * xx);
    }
    SUBCASE("alpha = 0 is the identity") {
        const auto out = marchaud_spectral(gauss, h, 0.0, Sign::Plus);
        for (std::size_t i = 0; i < n; i += 37)
            CHECK(out[i].real() == doctest::Approx(gauss[i]).epsilon(1e-10));
    }
    SUBCASE("even integer order agrees across signs") {
        const auto plus = marchaud_spectral(gauss, h, 2.0, Sign::Plus);
        const auto minus = marchaud_spectral(gauss, h, 2.0, Sign::Minus);
        for (std::size_t i = 0; i < n; i += 53)
            CHECK(plus[i].real() == doctest::Approx(minus[i].real()).epsilon(1e-10));
    }
    SUBCASE("boundary decay is enforced") {
        std::vector<double> bad(n, 1.0);
        CHECK_THROWS_AS(marchaud_spectral(bad, h, 0.5, Sign::Plus), PreconditionError);
    }
}

TEST_CASE("marchaud spectral on a sampled cosine (periodic window)") {
    const std::size_t n = 512;
    const double period = 2.0 * kPi;
    const double h = 8.0 * period / n; // eight whole periods
    const double u = 1.0, alpha = 0.5;
    std::vector<double> samples(n);
    for (std::size_t i = 0; i < n; ++i) samples[i] = std::cos(u * i * h);
    SpectralOptions opt;
    opt.assume_periodic = true;
    const auto out = marchaud_spectral(samples, h, alpha, opt.assume_periodic ? Sign::Plus
                                                                              : Sign::Plus,
                                       opt);
    for (std::size_t i = 0; i < n; i += 41) {
        const double expect = std::pow(u, alpha) * std::cos(u * i * h + alpha * kPi / 2.0);
        CHECK(out[i].real() == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("integer-order spectral derivative of a Gaussian") {
    const std::size_t n = 2048;
    const double h = 0.02;
    std::vector<double> gauss(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xx = (static_cast<double>(i) - 1024.0) * h;
        gauss[i] = std::exp(-0.5 * xx * xx);
    }
    const auto d1 = marchaud_spectral(gauss, h, 1.0, Sign::Plus);
    for (std::size_t i = 256; i < n - 256; i += 97) {
        const double xx = (static_cast<double>(i) - 1024.0) * h;
        CHECK(d1[i].real() == doctest::Approx(-xx * std::exp(-0.5 * xx * xx)).epsilon(1e-8));
    }
}

TEST_CASE("fractional heat kernel point values") {
    CHECK(frac_heat_kernel_1d(0.0, 1.0, 0.0, Sign::Plus) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-12));
    CHECK(frac_heat_kernel_1d(1.0, 1.0, 0.0, Sign::Plus) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(frac_heat_kernel_1d(2.0, 1.0, 0.0, Sign::Plus) ==
          doctest::Approx(-1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("integer heat kernels equal Hermite closed forms") {
    for (int k = 0; k <= 4; ++k) {
        for (double eps : {0.3, 1.0, 2.5}) {
            for (double x : {-1.7, 0.0, 0.4, 2.2}) {
                const double viaquad = frac_heat_kernel_1d(k, eps, x, Sign::Plus);
                const double hermite = gaussian_derivative_1d(k, eps, x);
                CAPTURE(k);
                CAPTURE(eps);
                CAPTURE(x);
                CHECK(viaquad == doctest::Approx(hermite).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("heat kernel profile matches the one-shot evaluation") {
    for (double alpha : {0.0, 0.5, 1.0, 1.3}) {
        HeatKernelProfile prof(alpha);
        for (double eps : {0.01, 0.4}) {
            for (double x : {-3.0, -0.2, 0.0, 0.9, 7.7, 30.0}) {
                for (Sign s : {Sign::Plus, Sign::Minus}) {
                    const double a = prof(eps, x, s);
                    const double b = frac_heat_kernel_1d(alpha, eps, x, s);
                    CAPTURE(alpha);
                    CAPTURE(x);
                    CHECK(a == doctest::Approx(b).epsilon(5e-7));
                    CHECK(std::abs(a - b) < 1e-8 * std::pow(eps, -0.5 * (alpha + 1.0)) + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("heat kernel is continuous in the order") {
    // grid check of alpha-continuity on a compact (eps, x) box
    const double base = 0.6;
    double prev_gap = 1e9;
    for (double da : {0.2, 0.1, 0.05, 0.025}) {
        double gap = 0.0;
        for (double eps : {0.2, 1.0})
            for (double x : {-1.0, 0.0, 0.5, 2.0})
                gap = std::max(gap, std::abs(frac_heat_kernel_1d(base + da, eps, x, Sign::Plus) -
                                             frac_heat_kernel_1d(base, eps, x, Sign::Plus)));
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.05);
}

TEST_CASE("d-dimensional kernel factorizes") {
    const MultiIndex alpha({0.5, 1.0});
    const double x[2] = {0.3, -0.8};
    const double prod = frac_heat_kernel_1d(0.5, 0.7, 0.3, Sign::Minus) *
                        frac_heat_kernel_1d(1.0, 0.7, -0.8, Sign::Minus);
    CHECK(frac_heat_kernel_nd(alpha, 0.7, x, Sign::Minus) ==
          doctest::Approx(prod).epsilon(1e-13));
}

TEST_CASE("contour identity residuals") {
    CHECK(verify_lemma_contour_identity(0.5, 1.0) < 1e-8);
    CHECK(verify_lemma_contour_identity(0.25, -3.0) < 1e-8);
    CHECK(verify_lemma_contour_identity(0.5, 0.0) == 0.0);
    // sweep
    rng::Stream stream(31, 2);
    for (int i = 0; i < 20; ++i) {
        const double a = 0.05 + 0.9 * stream.next_uniform();
        const double u = 20.0 * (stream.next_uniform() - 0.5);
        CAPTURE(a);
        CAPTURE(u);
        CHECK(verify_lemma_contour_identity(a, u) < 1e-8);
    }
}

TEST_CASE("signed power difference bound estimates") {
    SUBCASE("alpha = 1 gives c at most 1") {
        const auto est = verify_signed_power_diff_bound(1.0, 20000, 5);
        CHECK(est.c_hat <= 1.0 + 1e-12);
        CHECK(est.stable);
    }
    SUBCASE("alpha = 0 gives zero") {
        const auto est = verify_signed_power_diff_bound(0.0, 1000, 6);
        CHECK(est.c_hat == 0.0);
    }
    SUBCASE("alpha = 2.5 is finite and stable") {
        const auto est = verify_signed_power_diff_bound(2.5, 1000000, 7);
        CHECK(std::isfinite(est.c_hat));
        CHECK(est.c_hat > 0.0);
        CHECK(est.c_hat_doubled <= 1.05 * est.c_hat);
    }
}

TEST_CASE("gaussian shift identity residuals") {
    CHECK(verify_gaussian_shift_identity(1.0, 0.0, 0) < 1e-12);
    CHECK(verify_gaussian_shift_identity(1.0, 2.0, 1) < 1e-10);
    CHECK(verify_gaussian_shift_identity(0.5, -1.0, 4) < 1e-8);
}

TEST_CASE("spectral and difference forms agree on decaying test functions") {
    // Gaussian and raised-cosine bumps, fractional orders, interior half of
    // the grid
    const std::size_t n = 4096;
    const double lo = -40.96, h = 0.02; // probe points land on samples
    auto gauss_fn = [](double y) { return std::exp(-0.5 * y * y); };
    auto cosbump_fn = [](double y) {
        return std::abs(y) < 8.0 ? 0.5 * (1.0 + std::cos(kPi * y / 8.0)) : 0.0;
    };
    std::vector<double> gs(n), cb(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xx = lo + h * i;
        gs[i] = gauss_fn(xx);
        cb[i] = cosbump_fn(xx);
    }
    for (double alpha : {0.25, 0.5, 0.75}) {
        const auto spec_g = marchaud_spectral(gs, h, alpha, Sign::Plus);
        const auto spec_c = marchaud_spectral(cb, h, alpha, Sign::Plus);
        for (double xx : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
            const auto idx = static_cast<std::size_t>(std::llround((xx - lo) / h));
            const double d_g =
                marchaud_integral(gauss_fn, alpha, xx, Sign::Plus);
            CAPTURE(alpha);
            CAPTURE(xx);
            CHECK(std::abs(d_g - spec_g[idx].real()) < 1e-6);
            const double d_c = marchaud_integral(cosbump_fn, alpha, xx, Sign::Plus);
            CHECK(std::abs(d_c - spec_c[idx].real()) < 1e-6);
        }
    }
}
