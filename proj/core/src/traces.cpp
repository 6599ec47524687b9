#include "parawave/traces.hpp"

#include <utility>

#include "parawave/multiplier.hpp"

namespace parawave {

SurfaceTraces compute_traces(const WaveState& state, const Field& g_psi) {
  const Grid& g = state.eta.grid();
  require_same_grid(g, state.psi.grid(), "compute_traces");
  require_same_grid(g, g_psi.grid(), "compute_traces");

  Field denom = Field::constant(g, 1.0);
  Field b_num = g_psi;
  std::vector<Field> deta, dpsi;
  for (int axis = 0; axis < g.dim(); ++axis) {
    deta.push_back(deriv(state.eta, axis));
    dpsi.push_back(deriv(state.psi, axis));
    b_num += pointwise_product(deta[axis], dpsi[axis]);
    denom += pointwise_product(deta[axis], deta[axis]);
  }
  Field b = pointwise_divide(b_num, denom);
  std::vector<Field> v;
  for (int axis = 0; axis < g.dim(); ++axis) {
    v.push_back(dpsi[axis] - pointwise_product(b, deta[axis]));
  }
  return SurfaceTraces{g_psi, std::move(b), std::move(v)};
}

SurfaceTraces compute_traces(const WaveState& state,
                             const WaveParams& params) {
  return compute_traces(state, dn_exact(state.eta, state.psi, params.dn));
}

}  // namespace parawave
