#pragma once

#include "parawave/traces.hpp"

namespace parawave {

struct WaveRhs {
  Field deta_dt;
  Field dpsi_dt;
};

// Evolution right-hand side
//   deta_dt = G(eta) psi + epsilon lap eta,
//   dpsi_dt = -g eta - 1/2 |grad psi|^2
//             + 1/2 (grad eta . grad psi + G(eta) psi)^2 / (1 + |grad eta|^2)
//             + epsilon lap psi.
// The quotient is expanded as |b grad eta|^2 + b^2 so that every square is
// dealiased individually while the rearranged form
//   dpsi_dt + v . grad psi = -g eta + 1/2 |v|^2 + 1/2 b^2
// stays exact on the grid (same dealiased products on both sides).
WaveRhs zakharov_rhs(const WaveState& state, const WaveParams& params);

// Variant reusing already-computed traces (must belong to the same state).
WaveRhs zakharov_rhs(const WaveState& state, const WaveParams& params,
                     const SurfaceTraces& traces);

// Largest stable step c_cfl sqrt(dx / (g pi)) for the gravity-wave
// dispersion resolved by the grid.
double cfl_limit(const Grid& grid, double gravity, double c_cfl = 0.5);

// Classical fourth-order Runge-Kutta step. Throws CflViolation when dt
// exceeds cfl_limit, and TaylorSignViolation when monitoring is enabled and
// min a falls below taylor_floor * gravity after the step.
WaveState step_rk4(const WaveState& state, const WaveParams& params,
                   double dt);

// Initial-data mollifier: smooth radial cutoff equal to 1 for
// |xi| <= 1/epsilon and 0 for |xi| >= 2/epsilon (identity when epsilon <= 0).
Field mollify(const Field& f, double epsilon);

}  // namespace parawave
