#pragma once

#include <complex>
#include <vector>

#include "parawave/grid.hpp"

namespace parawave::detail {

// Forward transform of a real field; carries the 1/n^d factor so that
// f(x) = sum_j c_j exp(i xi_j . x) holds with c = fft_forward(f).
std::vector<std::complex<double>> fft_forward(const Grid& grid,
                                              const std::vector<double>& in);

// Inverse of fft_forward (no extra scaling); returns the real part. The
// imaginary part is the caller's responsibility: it vanishes only for
// Hermitian-symmetric spectra.
std::vector<double> fft_inverse(const Grid& grid,
                                const std::vector<std::complex<double>>& in);

// Inverse transform that keeps the complex values.
std::vector<std::complex<double>> fft_inverse_complex(
    const Grid& grid, const std::vector<std::complex<double>>& in);

// Forward transform of complex samples (same 1/n^d normalization).
std::vector<std::complex<double>> fft_forward_complex(
    const Grid& grid, const std::vector<std::complex<double>>& in);

}  // namespace parawave::detail
