#pragma once

#include <vector>

#include "parawave/dn.hpp"
#include "parawave/field.hpp"

namespace parawave {

struct WaveState {
  Field eta;
  Field psi;
};

// Parameters shared by the whole evolution pipeline. The same DnParams
// drive every elliptic solve, so traces, Taylor coefficient, and the
// right-hand side all see one discretization.
struct WaveParams {
  double gravity = 1.0;
  double epsilon = 0.0;         // parabolic regularization strength
  bool use_filter = false;      // exponential spectral filter after each step
  bool monitor_taylor = false;  // enforce min a >= taylor_floor * gravity
  double taylor_floor = 0.5;
  DnParams dn;
};

// Boundary traces of the potential: g_psi = G(eta) psi, the vertical
// velocity b = (grad eta . grad psi + g_psi) / (1 + |grad eta|^2), and the
// horizontal velocity v = grad psi - b grad eta (one Field per dimension).
// b and v are assembled with pointwise products, so the defining identities
// hold on the grid to roundoff.
struct SurfaceTraces {
  Field g_psi;
  Field b;
  std::vector<Field> v;
};

SurfaceTraces compute_traces(const WaveState& state, const WaveParams& params);

// Variant reusing an already-computed trace G(eta) psi.
SurfaceTraces compute_traces(const WaveState& state, const Field& g_psi);

}  // namespace parawave
