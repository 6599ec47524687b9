#include "parawave/products.hpp"

#include <cmath>
#include <cstdlib>

#include "parawave/fft.hpp"

namespace parawave {

int dealias_cutoff(const Grid& grid) { return (grid.n() - 1) / 3; }

Field dealias_truncate(const Field& f) {
  const Grid& grid = f.grid();
  const int kc = dealias_cutoff(grid);
  auto spec = f.spectrum();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto m = grid.modes(i);
    if (std::abs(m[0]) > kc || std::abs(m[1]) > kc) spec[i] = 0.0;
  }
  return Field(grid, detail::fft_inverse(grid, spec));
}

Field dealias_product(const Field& a, const Field& b) {
  return dealias_truncate(pointwise_product(a, b));
}

bool is_band_limited(const Field& f, double rel_tol) {
  const Grid& grid = f.grid();
  const int kc = dealias_cutoff(grid);
  const auto& spec = f.spectrum();
  double scale = 0.0;
  for (const auto& c : spec) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return true;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto m = grid.modes(i);
    if ((std::abs(m[0]) > kc || std::abs(m[1]) > kc) &&
        std::abs(spec[i]) > rel_tol * scale) {
      return false;
    }
  }
  return true;
}

}  // namespace parawave
