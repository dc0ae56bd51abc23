#pragma once

#include <complex>
#include <memory>

#include "fraclab/multi_index.hpp"
#include "fraclab/process.hpp"
#include "fraclab/two_time.hpp"

namespace fraclab {

enum class JVariant { J, JHat, JTilde };

struct JKernelValue {
    std::complex<double> value;
    JVariant variant = JVariant::J;
    double alpha = 0, x = 0, t = 0, s = 0, eps = 0;
    double quad_error = 0;
};

/// One per-dimension factor of the two-time second-moment representation.
/// With rho_A = (A-B)/sqrt(Delta), rho_C = (C-B)/sqrt(Delta) and the
/// diagonalizing shear of the (v1, v2) Gaussian form, the factor is
///
///   J(alpha, x) = G / D^{(2 alpha+1)/2} *
///     int ( i(-u1 + rho_A u2) )_0^alpha ( i(u1 + rho_C u2) )_0^alpha
///         e^{-(u1^2+u2^2)/2} e^{i G x u2} du1 du2,
///
/// JHat replaces rho_A by -rho_C (dropping the sqrt(D) G u2 shift), making
/// the integrand |u1 + rho_C u2|^{2 alpha}; JTilde drops the u2 coupling
/// entirely and evaluates in closed form
///   G / D^{(2 alpha+1)/2} e^{-G^2 x^2 / 2} sqrt(2 pi) 2^{alpha+1/2}
///   Gamma(alpha + 1/2).
/// J and JHat are computed in polar coordinates: the angular factor is
/// integrated per smooth arc (tanh-sinh across the sign kinks of the two
/// linear forms), the radial factor is M(2 alpha + 1, G x sin theta).
/// Values are real; the Minus sign conjugates the signed powers, which at
/// the moment level is the reflection x -> -x.
class JKernelEvaluator {
public:
    JKernelEvaluator(JVariant variant, double alpha, double x, Sign sign);
    ~JKernelEvaluator();
    JKernelEvaluator(JKernelEvaluator&&) noexcept;
    JKernelEvaluator& operator=(JKernelEvaluator&&) noexcept;

    JKernelValue evaluate(const TwoTimeStats& stats) const;

    JVariant variant() const noexcept { return variant_; }
    double alpha() const noexcept { return alpha_; }
    double x() const noexcept { return x_; }

private:
    struct Impl;
    JVariant variant_;
    double alpha_, x_;
    Sign sign_;
    std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper.
JKernelValue j_kernel(JVariant variant, double alpha, double x, double t, double s,
                      double eps, const ProcessKind& kind, Sign sign);

/// Lemma-2.5 closed form of J for integer alpha at x = 0:
///   2 pi sum_{l even} c_{alpha,l} B^{alpha-l} / Delta^{(2 alpha - l + 1)/2},
///   c_{k,l} = (l-1)!! C(k,l) (2k-l-1)!!.
double j_closed_form_integer(int alpha, const TwoTimeStats& stats);

} // namespace fraclab
