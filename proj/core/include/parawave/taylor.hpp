#pragma once

#include "parawave/traces.hpp"

namespace parawave {

// Taylor coefficient a = -d_y P at the surface via the pressure. With R the
// harmonic field carrying Dirichlet data g eta + 1/2 |grad phi|^2 at the
// surface, the pressure is P = R - g y - 1/2 |grad phi|^2, and the shifted
// field W = P + g y solves the same flattened problem with Dirichlet data
// g eta, interior source F0 = -alpha |Lambda^2 phi|^2 built from the
// flattened Hessian of the potential, and (finite depth) the bottom
// conormal data of -1/2 |grad phi|^2. Then a = g - Lambda_1 W at z = 0.
Field taylor_pressure(const WaveState& state, const WaveParams& params);

// Same coefficient via a = g + (d_t + v . grad) b, with the time
// derivatives substituted from the evolution equations and the shape
// derivative of the Dirichlet-Neumann trace
//   d_t G(eta) psi = G(eta)(dpsi_dt - b deta_dt) - div(v deta_dt).
// A pipeline independent of taylor_pressure: agreement of the two is a
// genuine cross-check of the elliptic core.
Field taylor_shape_derivative(const WaveState& state,
                              const WaveParams& params);

}  // namespace parawave
