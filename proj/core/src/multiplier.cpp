#include "parawave/multiplier.hpp"

#include <cmath>

#include "parawave/errors.hpp"
#include "parawave/fft.hpp"

namespace parawave {

std::vector<std::complex<double>> sample_multiplier(const Grid& grid,
                                                    const Multiplier& m) {
  std::vector<std::complex<double>> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = m(grid.wavenumber(i));
  return out;
}

Field multiplier_apply_sampled(const Field& f,
                               const std::vector<std::complex<double>>& m) {
  const Grid& grid = f.grid();
  if (m.size() != grid.size()) {
    throw GridMismatch("multiplier_apply: sampled multiplier has wrong size");
  }
  double scale = 0.0;
  for (const auto& c : m) scale = std::max(scale, std::abs(c));
  const double tol = 1e-12 * std::max(scale, 1.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto jm = grid.modes(i);
    const int jx = jm[0] == -grid.n() / 2 ? jm[0] : -jm[0];
    const int jy = jm[1] == -grid.n() / 2 ? jm[1] : -jm[1];
    if (std::abs(m[grid.spectral_index(jx, jy)] - std::conj(m[i])) > tol) {
      throw NonHermitianMultiplier(
          "multiplier_apply: m(-xi) != conj(m(xi)) on the lattice");
    }
  }
  const auto& spec = f.spectrum();
  std::vector<std::complex<double>> out(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) out[i] = m[i] * spec[i];
  return Field(grid, detail::fft_inverse(grid, out));
}

Field multiplier_apply(const Field& f, const Multiplier& m) {
  return multiplier_apply_sampled(f, sample_multiplier(f.grid(), m));
}

namespace mult {

namespace {
double norm2(const std::array<double, 2>& xi) {
  return xi[0] * xi[0] + xi[1] * xi[1];
}
}  // namespace

Multiplier abs_xi() {
  return [](const std::array<double, 2>& xi) {
    return std::complex<double>(std::sqrt(norm2(xi)), 0.0);
  };
}

Multiplier bessel_pow(double s) {
  return [s](const std::array<double, 2>& xi) {
    return std::complex<double>(std::pow(1.0 + norm2(xi), 0.5 * s), 0.0);
  };
}

Multiplier laplacian() {
  return [](const std::array<double, 2>& xi) {
    return std::complex<double>(-norm2(xi), 0.0);
  };
}

Multiplier deriv(int axis) {
  return [axis](const std::array<double, 2>& xi) {
    return std::complex<double>(0.0, xi[axis]);
  };
}

Multiplier exp_abs(double c) {
  return [c](const std::array<double, 2>& xi) {
    return std::complex<double>(std::exp(c * std::sqrt(norm2(xi))), 0.0);
  };
}

Multiplier exp_bessel(double c) {
  return [c](const std::array<double, 2>& xi) {
    return std::complex<double>(std::exp(c * std::sqrt(1.0 + norm2(xi))), 0.0);
  };
}

}  // namespace mult

Field deriv(const Field& f, int axis) {
  // i*xi picks up the Nyquist mode with an odd symbol; zero it explicitly so
  // the derivative of a real field stays real (the mode is its own mirror).
  const Grid& grid = f.grid();
  std::vector<std::complex<double>> m(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto jm = grid.modes(i);
    if (jm[axis] == -grid.n() / 2) {
      m[i] = 0.0;
    } else {
      const auto xi = grid.wavenumber(i);
      m[i] = std::complex<double>(0.0, xi[axis]);
    }
  }
  return multiplier_apply_sampled(f, m);
}

Field laplacian(const Field& f) { return multiplier_apply(f, mult::laplacian()); }

}  // namespace parawave
