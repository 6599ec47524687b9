#include "parawave/grid.hpp"

#include <cmath>
#include <sstream>

#include "parawave/errors.hpp"

namespace parawave {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
constexpr double kPi = 3.14159265358979323846;
}  // namespace

Grid::Grid(int dim, int points_per_dim, double length_scale)
    : dim_(dim), n_(points_per_dim), length_scale_(length_scale) {
  if (dim != 1 && dim != 2) {
    throw Error("Grid: dim must be 1 or 2");
  }
  if (!power_of_two(points_per_dim) || points_per_dim < 16) {
    throw Error("Grid: points_per_dim must be a power of two >= 16");
  }
  if (!(length_scale > 0.0)) {
    throw Error("Grid: length scale must be positive");
  }
  size_ = 1;
  for (int d = 0; d < dim_; ++d) size_ *= static_cast<std::size_t>(n_);
}

double Grid::period() const { return 2.0 * kPi * length_scale_; }

double Grid::dx() const { return period() / n_; }

int Grid::mode_of(int index) const {
  return index < n_ / 2 ? index : index - n_;
}

int Grid::index_of(int mode) const { return mode >= 0 ? mode : mode + n_; }

std::array<double, 2> Grid::point(std::size_t i) const {
  if (dim_ == 1) {
    return {dx() * static_cast<double>(i), 0.0};
  }
  const std::size_t ix = i / static_cast<std::size_t>(n_);
  const std::size_t iy = i % static_cast<std::size_t>(n_);
  return {dx() * static_cast<double>(ix), dx() * static_cast<double>(iy)};
}

std::array<int, 2> Grid::modes(std::size_t i) const {
  if (dim_ == 1) {
    return {mode_of(static_cast<int>(i)), 0};
  }
  const int ix = static_cast<int>(i / static_cast<std::size_t>(n_));
  const int iy = static_cast<int>(i % static_cast<std::size_t>(n_));
  return {mode_of(ix), mode_of(iy)};
}

std::array<double, 2> Grid::wavenumber(std::size_t i) const {
  const auto m = modes(i);
  return {m[0] / length_scale_, m[1] / length_scale_};
}

std::size_t Grid::spectral_index(int jx, int jy) const {
  const std::size_t ix = static_cast<std::size_t>(index_of(jx));
  if (dim_ == 1) return ix;
  return ix * static_cast<std::size_t>(n_) +
         static_cast<std::size_t>(index_of(jy));
}

double Grid::max_abs_wavenumber() const {
  const double nyq = (n_ / 2) / length_scale_;
  return dim_ == 1 ? nyq : nyq * std::sqrt(2.0);
}

int Grid::lp_block_count() const {
  // kappa(theta) = 1 for |theta| <= 1.1, so S_K covers the lattice once
  // 2^-K * |xi|_max <= 1.1.
  int k = 0;
  double scale = 1.0;
  while (max_abs_wavenumber() * scale > 1.1) {
    scale *= 0.5;
    ++k;
  }
  return k;
}

bool Grid::operator==(const Grid& other) const {
  return dim_ == other.dim_ && n_ == other.n_ &&
         length_scale_ == other.length_scale_;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (a != b) {
    std::ostringstream os;
    os << where << ": grids differ (dim " << a.dim() << " vs " << b.dim()
       << ", n " << a.n() << " vs " << b.n() << ", L " << a.length_scale()
       << " vs " << b.length_scale() << ")";
    throw GridMismatch(os.str());
  }
}

}  // namespace parawave
