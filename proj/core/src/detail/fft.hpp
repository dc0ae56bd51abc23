#pragma once

#include <complex>
#include <vector>

namespace fraclab::detail {

/// Complex DFT via FFTW, unnormalized. direction: -1 forward, +1 backward.
/// Plans are cached per (size, direction); execution is thread-safe.
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& in,
                                      int direction);

} // namespace fraclab::detail
