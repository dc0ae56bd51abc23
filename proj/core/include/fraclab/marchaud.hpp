#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fraclab/multi_index.hpp"

namespace fraclab {

/// Truncation/acceleration policy for the Marchaud difference integral.
struct MarchaudTrunc {
    double tol = 1e-9;     // target absolute accuracy of the tail
    double split = 1.0;    // handover from the singular core to tail blocks
    double block = 3.141592653589793; // tail block length (half-period hint)
    int max_blocks = 240;
};

/// Marchaud fractional derivative for alpha in (0,1):
///   D^alpha_± f(x) = alpha/Gamma(1-alpha) int_0^inf (f(x) - f(x -+ y)) y^{-1-alpha} dy.
/// The singular core uses the substitution y = split * e^{-q}; the tail is
/// summed in blocks and extrapolated with the Wynn epsilon algorithm, which
/// covers both decaying and oscillatory (e.g. trigonometric) integrands.
/// Throws AccuracyError when the tail estimate exceeds trunc.tol.
/// f must be Hoelder-beta near x with beta > alpha (caller-asserted).
double marchaud_integral(const std::function<double(double)>& f, double alpha, double x,
                         Sign sign, const MarchaudTrunc& trunc = {});

struct SpectralOptions {
    /// Skip the boundary-decay precondition; exact for signals that are
    /// periodic on the sampled window (the DFT diagonalizes them). Padding
    /// and the kink correction are disabled on this path (they would move
    /// the bins off the signal frequencies).
    bool assume_periodic = false;
    double decay_tol = 1e-6; // |f(edge)| <= decay_tol * max|f|
    /// Zero-padding factor for decaying signals. The |u|^alpha kink of the
    /// multiplier at u = 0 leaves an O(du^{1+alpha}) quadrature defect in the
    /// inverse transform; padding shrinks du and the Navot endpoint term
    /// zeta(-alpha) du^{1+alpha} F(0) removes the leading remainder.
    std::size_t pad_factor = 64;
};

/// Spectral Marchaud derivative on a uniform grid: DFT, multiply by
/// |u|^alpha e^{± i pi alpha/2 sgn u}, inverse DFT. Valid for every
/// alpha >= 0; for integer alpha with the Plus sign this is spectral
/// differentiation. Requires boundary decay unless assume_periodic.
std::vector<std::complex<double>> marchaud_spectral(const std::vector<double>& samples,
                                                    double grid_step, double alpha,
                                                    Sign sign,
                                                    const SpectralOptions& opt = {});

} // namespace fraclab
