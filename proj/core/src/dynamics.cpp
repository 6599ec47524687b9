#include "parawave/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "parawave/errors.hpp"
#include "parawave/format.hpp"
#include "parawave/lp.hpp"
#include "parawave/multiplier.hpp"
#include "parawave/products.hpp"
#include "parawave/taylor.hpp"

namespace parawave {

WaveRhs zakharov_rhs(const WaveState& state, const WaveParams& params,
                     const SurfaceTraces& traces) {
  const Grid& g = state.eta.grid();
  Field deta = traces.g_psi;
  Field dpsi = (-params.gravity) * state.eta;
  for (int axis = 0; axis < g.dim(); ++axis) {
    const Field psi_x = deriv(state.psi, axis);
    const Field b_eta_x =
        pointwise_product(traces.b, deriv(state.eta, axis));
    dpsi -= 0.5 * dealias_product(psi_x, psi_x);
    dpsi += 0.5 * dealias_product(b_eta_x, b_eta_x);
  }
  dpsi += 0.5 * dealias_product(traces.b, traces.b);
  if (params.epsilon > 0.0) {
    deta += params.epsilon * laplacian(state.eta);
    dpsi += params.epsilon * laplacian(state.psi);
  }
  return WaveRhs{std::move(deta), std::move(dpsi)};
}

WaveRhs zakharov_rhs(const WaveState& state, const WaveParams& params) {
  return zakharov_rhs(state, params, compute_traces(state, params));
}

double cfl_limit(const Grid& grid, double gravity, double c_cfl) {
  if (gravity <= 0.0 || c_cfl <= 0.0) {
    throw Error("cfl_limit: gravity and c_cfl must be positive");
  }
  const double pi = 3.14159265358979323846;
  return c_cfl * std::sqrt(grid.dx() / (gravity * pi));
}

namespace {

Field spectral_filter(const Field& f) {
  const double kmax = f.grid().max_abs_wavenumber();
  return multiplier_apply(f, [kmax](const std::array<double, 2>& xi) {
    const double r = std::hypot(xi[0], xi[1]) / kmax;
    return std::complex<double>(std::exp(-36.0 * std::pow(r, 36)), 0.0);
  });
}

}  // namespace

WaveState step_rk4(const WaveState& state, const WaveParams& params,
                   double dt) {
  if (!(dt > 0.0)) throw Error("step_rk4: dt must be positive");
  const double limit = cfl_limit(state.eta.grid(), params.gravity);
  if (dt > limit * (1.0 + 1e-12)) {
    throw CflViolation("step_rk4: dt " + format_double(dt) +
                       " exceeds the stable limit " + format_double(limit));
  }

  const WaveRhs k1 = zakharov_rhs(state, params);
  const WaveState s2{state.eta + (0.5 * dt) * k1.deta_dt,
                     state.psi + (0.5 * dt) * k1.dpsi_dt};
  const WaveRhs k2 = zakharov_rhs(s2, params);
  const WaveState s3{state.eta + (0.5 * dt) * k2.deta_dt,
                     state.psi + (0.5 * dt) * k2.dpsi_dt};
  const WaveRhs k3 = zakharov_rhs(s3, params);
  const WaveState s4{state.eta + dt * k3.deta_dt, state.psi + dt * k3.dpsi_dt};
  const WaveRhs k4 = zakharov_rhs(s4, params);

  const double w = dt / 6.0;
  WaveState next{
      state.eta + w * (k1.deta_dt + 2.0 * k2.deta_dt + 2.0 * k3.deta_dt +
                       k4.deta_dt),
      state.psi + w * (k1.dpsi_dt + 2.0 * k2.dpsi_dt + 2.0 * k3.dpsi_dt +
                       k4.dpsi_dt)};
  if (params.use_filter) {
    next.eta = spectral_filter(next.eta);
    next.psi = spectral_filter(next.psi);
  }
  if (params.monitor_taylor) {
    const Field a = taylor_shape_derivative(next, params);
    const double amin =
        *std::min_element(a.values().begin(), a.values().end());
    const double floor = params.taylor_floor * params.gravity;
    if (amin < floor) {
      throw TaylorSignViolation("step_rk4: min Taylor coefficient " +
                                format_double(amin) + " fell below " +
                                format_double(floor));
    }
  }
  return next;
}

Field mollify(const Field& f, double epsilon) {
  if (epsilon <= 0.0) return f;
  return multiplier_apply(f, [epsilon](const std::array<double, 2>& xi) {
    const double r = std::hypot(xi[0], xi[1]);
    return std::complex<double>(smooth_step(epsilon * r - 1.0), 0.0);
  });
}

}  // namespace parawave
