#include "parawave/lp.hpp"

#include <cmath>

#include "parawave/errors.hpp"
#include "parawave/fft.hpp"

namespace parawave {

double smooth_step(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - t));
  const double b = std::exp(-1.0 / t);
  return a / (a + b);
}

double lp_kappa(double abs_theta) {
  return smooth_step((abs_theta - 1.1) / 0.8);
}

double lp_kappa_scaled(int k, double abs_xi) {
  return lp_kappa(std::ldexp(abs_xi, -k));
}

double lp_block_weight(int k, double abs_xi) {
  return k == 0 ? lp_kappa_scaled(0, abs_xi)
                : lp_kappa_scaled(k, abs_xi) - lp_kappa_scaled(k - 1, abs_xi);
}

namespace {

std::vector<std::complex<double>> lowpass_spectrum(const Field& f, int k) {
  const Grid& grid = f.grid();
  auto spec = f.spectrum();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto xi = grid.wavenumber(i);
    spec[i] *= lp_kappa_scaled(k, std::hypot(xi[0], xi[1]));
  }
  return spec;
}

}  // namespace

Field lp_lowpass(const Field& f, int k) {
  return Field(f.grid(), detail::fft_inverse(f.grid(), lowpass_spectrum(f, k)));
}

Field lp_block(const Field& f, int k) {
  if (k < 0) throw Error("lp_block: block index must be >= 0");
  const Grid& grid = f.grid();
  auto spec = f.spectrum();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto xi = grid.wavenumber(i);
    spec[i] *= lp_block_weight(k, std::hypot(xi[0], xi[1]));
  }
  return Field(grid, detail::fft_inverse(grid, spec));
}

std::vector<Field> lp_decompose(const Field& f) {
  std::vector<Field> blocks;
  const int kmax = f.grid().lp_block_count();
  blocks.reserve(kmax + 1);
  for (int k = 0; k <= kmax; ++k) blocks.push_back(lp_block(f, k));
  return blocks;
}

}  // namespace parawave
