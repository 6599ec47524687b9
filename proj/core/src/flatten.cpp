#include "parawave/flatten.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parawave/errors.hpp"
#include "parawave/multiplier.hpp"
#include "parawave/norms.hpp"

namespace parawave {

namespace {

// e^{c <D>} <D>^pow applied to f, sampled directly on the lattice.
Field smoothed_power(const Field& f, double c, int pow) {
  return multiplier_apply(f, [c, pow](const std::array<double, 2>& xi) {
    const double b = std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1]);
    return std::complex<double>(std::exp(c * b) * std::pow(b, pow), 0.0);
  });
}

}  // namespace

FlattenedDomain build_flattening(const Grid& grid, const Field& eta,
                                 double depth, BottomKind bottom, int nz,
                                 double delta) {
  require_same_grid(grid, eta.grid(), "build_flattening");
  if (depth <= 0.0) throw Error("build_flattening: depth must be positive");
  if (delta < 0.0) throw Error("build_flattening: delta must be nonnegative");
  if (delta == 0.0) {
    delta = std::min(0.1, depth / (4.0 * (1.0 + w1inf_norm(eta))));
  }

  ChebGrid cheb(nz);
  FlattenedDomain dom{grid,  cheb, bottom, depth, delta, eta, {}, {}, {},
                      {},    {},   0.0};
  const double h = depth;
  double min_rz = 1e300;
  for (int j = 0; j < cheb.count(); ++j) {
    const double z = cheb.node(j);
    const double c1 = delta * z;  // surface-anchored smoothing
    const Field e1 = smoothed_power(eta, c1, 0);
    const Field be1 = smoothed_power(eta, c1, 1);

    // The (1+z) taper pins the bottom of the strip to the flat line -h, so
    // the solve sees the true fixed bottom; only the surface lift is wavy.
    Field rho = (1.0 + z) * e1 + Field::constant(grid, z * h);
    Field rho_z = e1 + ((1.0 + z) * delta) * be1 + Field::constant(grid, h);
    Field rho_zz = (2.0 * delta) * be1 +
                   ((1.0 + z) * delta * delta) * smoothed_power(eta, c1, 2);

    min_rz = std::min(min_rz, [&] {
      double lo = 1e300;
      for (std::size_t i = 0; i < grid.size(); ++i) lo = std::min(lo, rho_z[i]);
      return lo;
    }());

    dom.rho_x.push_back(deriv(rho, 0));
    if (grid.dim() == 2) dom.rho_y.push_back(deriv(rho, 1));
    dom.rho.push_back(std::move(rho));
    dom.rho_z.push_back(std::move(rho_z));
    dom.rho_zz.push_back(std::move(rho_zz));
  }
  dom.min_rho_z = min_rz;
  if (min_rz <= 0.0) {
    throw DegenerateMap("build_flattening: min dz rho = " +
                        std::to_string(min_rz) +
                        "; surface too steep for this depth");
  }
  return dom;
}

}  // namespace parawave
