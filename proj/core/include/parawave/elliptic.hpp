#pragma once

#include <optional>
#include <vector>

#include "parawave/field.hpp"
#include "parawave/flatten.hpp"
#include "parawave/krylov.hpp"

namespace parawave {

// Coefficients of the flattened Laplace operator
//   dzz + alpha Lap + beta . grad dz - gamma dz
// per collocation level (surface first). beta_y is empty in one dimension.
// c0 is the ellipticity constant (min dz rho)^2 / (1 + max |grad rho|^2).
struct EllipticCoefficients {
  std::vector<Field> alpha;
  std::vector<Field> gamma;
  std::vector<Field> beta_x;
  std::vector<Field> beta_y;
  double c0 = 0.0;
};

EllipticCoefficients elliptic_coefficients(const FlattenedDomain& dom);

// Applies the discretized strip operator to stacked level values: row 0 is
// the surface Dirichlet identity, interior rows the flattened PDE, and the
// bottom row the mapped conormal (no-flux) condition. Used by the solver and
// by residual checks in tests.
std::vector<Field> elliptic_apply(const FlattenedDomain& dom,
                                  const std::vector<Field>& levels);

struct PotentialSolution {
  std::vector<Field> levels;  // flattened potential per collocation level
  KrylovResult stats;
};

// Solves the flattened Laplace problem with Dirichlet surface data and the
// domain's bottom condition. forcing, when non-empty, supplies the interior
// right-hand side per level (boundary entries ignored). bottom_data, when
// present, is the right-hand side of the flat bottom's mapped Neumann row
// (only valid for flat-bottom domains; default homogeneous). Infinite-depth
// domains subtract the harmonic background e^{zbar |D|} surface_data and
// solve for a zero-flux fluctuation, so the rest state is handled exactly
// per mode and the mean mode carries no artificial flux. Throws
// SolverDiverged when GMRES stalls and the dense fallback is disabled or the
// problem is too large for it.
PotentialSolution solve_laplace(const FlattenedDomain& dom,
                                const Field& surface_data,
                                const std::vector<Field>& forcing = {},
                                const SolverOptions& opts = {},
                                const std::optional<Field>& bottom_data = {});

}  // namespace parawave
