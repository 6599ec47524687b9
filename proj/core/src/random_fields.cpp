#include "parawave/random_fields.hpp"

#include <cmath>
#include <complex>

#include "parawave/errors.hpp"
#include "parawave/norms.hpp"
#include "parawave/products.hpp"

namespace parawave {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Stable per-mode index so phases do not depend on grid size.
std::uint64_t mode_key(int jx, int jy) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(jx)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(jy));
}

Field spectral_noise(const Grid& grid, const CounterRng& rng,
                     std::uint64_t stream,
                     const std::function<double(double)>& envelope,
                     double steepness) {
  const int kc = dealias_cutoff(grid);
  std::vector<std::complex<double>> spec(grid.size(), 0.0);
  const int jy_max = grid.dim() == 2 ? kc : 0;
  for (int jx = -kc; jx <= kc; ++jx) {
    for (int jy = -jy_max; jy <= jy_max; ++jy) {
      // Fill one half-lattice and mirror, so the field is real.
      if (jx < 0 || (jx == 0 && jy <= 0)) continue;
      const double r = std::hypot(static_cast<double>(jx),
                                  static_cast<double>(jy)) /
                       grid.length_scale();
      const double amp = envelope(r);
      const double phi = rng.phase(stream, mode_key(jx, jy));
      const auto c = 0.5 * amp * std::polar(1.0, phi);
      spec[grid.spectral_index(jx, jy)] = c;
      spec[grid.spectral_index(-jx, -jy)] = std::conj(c);
    }
  }
  Field f = Field::from_spectrum(grid, std::move(spec));
  const double slope = max_slope(f);
  if (steepness > 0.0 && slope > 0.0) {
    f *= steepness / slope;
  }
  return f;
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t index) const {
  return splitmix(splitmix(splitmix(seed_) ^ stream) ^ index);
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t index) const {
  return static_cast<double>(bits(stream, index) >> 11) * 0x1.0p-53;
}

double CounterRng::phase(std::uint64_t stream, std::uint64_t index) const {
  return kTwoPi * uniform(stream, index);
}

Field rough_field(const Grid& grid, const CounterRng& rng,
                  std::uint64_t stream, double decay, double steepness) {
  return spectral_noise(
      grid, rng, stream,
      [decay](double r) { return std::pow(r, -decay); }, steepness);
}

Field smooth_random_field(const Grid& grid, const CounterRng& rng,
                          std::uint64_t stream, double k0, double steepness) {
  if (!(k0 > 0.0)) throw Error("smooth_random_field: k0 must be positive");
  return spectral_noise(
      grid, rng, stream,
      [k0](double r) { return std::exp(-(r / k0) * (r / k0)); }, steepness);
}

}  // namespace parawave
