#pragma once

// Minimal RAII layer over FFTW3 complex transforms.

#include <complex>
#include <span>
#include <vector>

namespace photmol::fft {

enum class Direction { forward, backward };

/// In-place unnormalized DFT. forward: X_k = sum_j x_j e^{-2 pi i jk/n}.
void transform(std::span<std::complex<double>> data, Direction direction);

/// Linear (non-circular) convolution out_i = sum_j signal_j kernel(i - j)
/// for i in [0, n), with kernel given on offsets -(n-1)..(n-1) as
/// kernel[m + n - 1].
std::vector<std::complex<double>> linear_convolution(std::span<const std::complex<double>> signal,
                                                     std::span<const std::complex<double>> kernel);

}  // namespace photmol::fft
