#pragma once

#include <vector>

#include "parawave/chebyshev.hpp"
#include "parawave/field.hpp"

namespace parawave {

enum class BottomKind {
  flat,      // mapped Neumann condition at z = -1
  infinite,  // strip truncation: Dirichlet on the fluctuation at z = -1
};

// Smoothed flattening of the fluid strip below the surface eta: the map
//   rho(x, z) = (1 + z) e^{delta z <D>} eta - z (e^{-(1+z) delta <D>} eta - h)
// sends z = 0 to y = eta(x) and z = -1 to y = eta(x) - h while regularizing
// the x-dependence away from the surface. All stored level arrays are
// ordered surface first (index 0 at z = 0). rho_z / rho_zz hold the analytic
// vertical derivatives, rho_x / rho_y the spectral horizontal gradient
// (rho_y empty in one dimension).
struct FlattenedDomain {
  Grid grid;
  ChebGrid cheb;
  BottomKind bottom;
  double depth;
  double delta;
  Field eta;
  std::vector<Field> rho;
  std::vector<Field> rho_z;
  std::vector<Field> rho_zz;
  std::vector<Field> rho_x;
  std::vector<Field> rho_y;
  double min_rho_z;
};

// Builds the flattened strip. delta = 0 picks the automatic smoothing scale
// min(0.1, h / (4 (1 + ||eta||_{W^{1,inf}}))). Throws DegenerateMap when the
// map fails to be one-to-one (min dz rho <= 0).
FlattenedDomain build_flattening(const Grid& grid, const Field& eta,
                                 double depth, BottomKind bottom, int nz,
                                 double delta = 0.0);

}  // namespace parawave
