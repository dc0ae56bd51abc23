#pragma once

#include <cstdint>
#include <cstddef>

namespace fraclab {

/// Contour identity behind the Fourier form of the Marchaud derivative:
///   alpha/Gamma(1-alpha) int_0^inf v^{-1-alpha} (1 - e^{-i u v}) dv
///     = |u|^alpha e^{i pi alpha/2 sgn u},  alpha in (0,1).
/// LHS by direct quadrature (period panels + rotated-contour tail), RHS in
/// closed form; returns |LHS - RHS|.
double verify_lemma_contour_identity(double alpha, double u);

/// Signed-power difference bound
///   |(i(y1+y2))_0^a - (i y2)_0^a| <= c (|y2|^{abar - (abar^1) 1[atilde=0]}
///                                        |y1|^{a*} + |y1|^a).
/// Estimates c as the max ratio over Gaussian samples, and again over twice
/// as many; throws NumericalError if the ratio diverges under refinement.
struct DiffBoundEstimate {
    double c_hat = 0;
    double c_hat_doubled = 0;
    bool stable = false; // within 5% under doubling
};
DiffBoundEstimate verify_signed_power_diff_bound(double alpha, std::size_t n_samples,
                                                 std::uint64_t seed);

/// Gaussian Fourier shift (contour translation): for a > 0, integer m >= 0,
///   int t^m e^{-a t^2/2} e^{i x t} dt
///     = e^{-x^2/(2a)} int (t + i x/a)^m e^{-a t^2/2} dt.
/// Both sides by quadrature; returns the residual modulus.
double verify_gaussian_shift_identity(double a, double x, int m);

} // namespace fraclab
