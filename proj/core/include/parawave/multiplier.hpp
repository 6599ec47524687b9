#pragma once

#include <complex>
#include <functional>

#include "parawave/field.hpp"

namespace parawave {

// A Fourier multiplier sampled on the wavenumber lattice. Receives xi =
// (kx, ky) with ky = 0 when d = 1.
using Multiplier =
    std::function<std::complex<double>(const std::array<double, 2>&)>;

// Applies m(D) to f. Requires the sampled multiplier to satisfy
// m(-xi) = conj(m(xi)) on the lattice (Nyquist rows must be real), so the
// output is again a real field; otherwise throws NonHermitianMultiplier.
Field multiplier_apply(const Field& f, const Multiplier& m);

// Same, with the multiplier already sampled on the lattice (values[i] for
// flattened spectral index i). Symmetry is still enforced.
Field multiplier_apply_sampled(const Field& f,
                               const std::vector<std::complex<double>>& m);

// Samples a multiplier on the grid's lattice.
std::vector<std::complex<double>> sample_multiplier(const Grid& grid,
                                                    const Multiplier& m);

namespace mult {

// |xi|
Multiplier abs_xi();
// <xi>^s = (1 + |xi|^2)^(s/2)
Multiplier bessel_pow(double s);
// -|xi|^2 (the Laplacian)
Multiplier laplacian();
// i*xi_axis (the partial derivative along one axis)
Multiplier deriv(int axis);
// exp(c*|xi|); use c <= 0 for decay
Multiplier exp_abs(double c);
// exp(c*<xi>)
Multiplier exp_bessel(double c);

}  // namespace mult

// Convenience derivative wrappers.
Field deriv(const Field& f, int axis);
Field laplacian(const Field& f);

}  // namespace parawave
