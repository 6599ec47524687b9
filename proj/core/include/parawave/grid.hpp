#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace parawave {

// Uniform periodic grid on [0, 2*pi*L)^d, d = 1 or 2, with n points per
// dimension (n a power of two, n >= 16). The wavenumber lattice is
// xi = j / L with integer j in [-n/2, n/2) per dimension. Values and spectra
// are stored row-major with the x index outermost; spectra use the usual FFT
// ordering j = 0, 1, ..., n/2-1, -n/2, ..., -1 per dimension.
class Grid {
 public:
  Grid(int dim, int points_per_dim, double length_scale = 1.0);

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }
  double length_scale() const { return length_scale_; }
  double period() const;   // 2*pi*L
  double dx() const;       // grid spacing

  // Integer mode for a storage index along one dimension.
  int mode_of(int index) const;
  // Storage index along one dimension for an integer mode.
  int index_of(int mode) const;

  // Coordinates of flattened point index i.
  std::array<double, 2> point(std::size_t i) const;
  // Wavenumber vector (j/L per axis) of flattened spectral index i.
  std::array<double, 2> wavenumber(std::size_t i) const;
  // Integer modes of flattened spectral index i (second entry 0 when d = 1).
  std::array<int, 2> modes(std::size_t i) const;
  // Flattened spectral index of integer modes.
  std::size_t spectral_index(int jx, int jy = 0) const;

  // Largest |xi| on the lattice (Nyquist corner).
  double max_abs_wavenumber() const;
  // Number of dyadic blocks needed to cover the lattice: smallest K with
  // kappa(2^-K xi) = 1 for every lattice point.
  int lp_block_count() const;

  bool operator==(const Grid& other) const;
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  int dim_;
  int n_;
  double length_scale_;
  std::size_t size_;
};

// Throws GridMismatch unless both grids are identical.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace parawave
