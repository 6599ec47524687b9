#include "parawave/taylor.hpp"

#include <optional>
#include <utility>
#include <vector>

#include "parawave/dynamics.hpp"
#include "parawave/elliptic.hpp"
#include "parawave/multiplier.hpp"

namespace parawave {

namespace {

// Collocation d/dz across a stack of levels.
std::vector<Field> dz_levels(const FlattenedDomain& dom,
                             const std::vector<Field>& u) {
  const int nl = dom.cheb.count();
  const Eigen::MatrixXd& d1 = dom.cheb.d1();
  std::vector<Field> out;
  out.reserve(nl);
  for (int j = 0; j < nl; ++j) {
    std::vector<double> vals(dom.grid.size(), 0.0);
    for (int m = 0; m < nl; ++m) {
      const double w = d1(j, m);
      if (w == 0.0) continue;
      const auto& um = u[m].values();
      for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += w * um[i];
    }
    out.emplace_back(dom.grid, std::move(vals));
  }
  return out;
}

// Flattened gradient (d_y, then horizontal axes): Lambda_1 = dz / rho_z and
// Lambda_2 = grad - rho_x Lambda_1, so each component is the pullback of
// the corresponding Cartesian derivative.
std::vector<std::vector<Field>> lambda_grad(const FlattenedDomain& dom,
                                            const std::vector<Field>& u) {
  const int nl = dom.cheb.count();
  const auto dzu = dz_levels(dom, u);
  std::vector<std::vector<Field>> out(1 + dom.grid.dim());
  for (int j = 0; j < nl; ++j) {
    out[0].push_back(pointwise_divide(dzu[j], dom.rho_z[j]));
  }
  for (int axis = 0; axis < dom.grid.dim(); ++axis) {
    const auto& slope = axis == 0 ? dom.rho_x : dom.rho_y;
    for (int j = 0; j < nl; ++j) {
      out[1 + axis].push_back(deriv(u[j], axis) -
                              pointwise_product(slope[j], out[0][j]));
    }
  }
  return out;
}

}  // namespace

Field taylor_pressure(const WaveState& state, const WaveParams& params) {
  const Grid& g = state.eta.grid();
  require_same_grid(g, state.psi.grid(), "taylor_pressure");
  const auto dom =
      build_flattening(g, state.eta, params.dn.depth, params.dn.bottom,
                       params.dn.nz, params.dn.delta);
  const auto co = elliptic_coefficients(dom);
  const auto phi =
      solve_laplace(dom, state.psi, {}, params.dn.solver);
  const int nl = dom.cheb.count();

  const auto grad = lambda_grad(dom, phi.levels);
  std::vector<Field> speed2;
  speed2.reserve(nl);
  for (int j = 0; j < nl; ++j) {
    Field s2 = pointwise_product(grad[0][j], grad[0][j]);
    for (int axis = 0; axis < g.dim(); ++axis) {
      s2 += pointwise_product(grad[1 + axis][j], grad[1 + axis][j]);
    }
    speed2.push_back(std::move(s2));
  }

  // Source F0 = -alpha |Lambda^2 phi|^2 from the full flattened Hessian.
  std::vector<Field> forcing(nl, Field::zeros(g));
  for (const auto& component : grad) {
    const auto hess = lambda_grad(dom, component);
    for (const auto& row : hess) {
      for (int j = 0; j < nl; ++j) {
        forcing[j] += pointwise_product(row[j], row[j]);
      }
    }
  }
  for (int j = 0; j < nl; ++j) {
    forcing[j] = (-1.0) * pointwise_product(co.alpha[j], forcing[j]);
  }

  // Finite depth: W = R - 1/2 |grad phi|^2 inherits the conormal data of
  // the subtracted term, since R itself satisfies the homogeneous bottom
  // condition.
  std::optional<Field> bottom;
  if (dom.bottom == BottomKind::flat) {
    const int b = nl - 1;
    const auto dzsp = dz_levels(dom, speed2);
    Field grad2 = pointwise_product(dom.rho_x[b], dom.rho_x[b]);
    if (g.dim() == 2) {
      grad2 += pointwise_product(dom.rho_y[b], dom.rho_y[b]);
    }
    Field con = pointwise_product(Field::constant(g, 1.0) + grad2, dzsp[b]) -
                pointwise_product(pointwise_product(dom.rho_z[b], dom.rho_x[b]),
                                  deriv(speed2[b], 0));
    if (g.dim() == 2) {
      con -= pointwise_product(pointwise_product(dom.rho_z[b], dom.rho_y[b]),
                               deriv(speed2[b], 1));
    }
    bottom = (-0.5) * con;
  }

  const auto w = solve_laplace(dom, params.gravity * state.eta, forcing,
                               params.dn.solver, bottom);
  const Field dzw0 = dz_levels(dom, w.levels)[0];
  return Field::constant(g, params.gravity) -
         pointwise_divide(dzw0, dom.rho_z[0]);
}

Field taylor_shape_derivative(const WaveState& state,
                              const WaveParams& params) {
  const Grid& g = state.eta.grid();
  require_same_grid(g, state.psi.grid(), "taylor_shape_derivative");
  WaveParams base = params;
  base.epsilon = 0.0;  // the coefficient belongs to the unregularized flow
  const SurfaceTraces tr = compute_traces(state, base);
  const WaveRhs rhs = zakharov_rhs(state, base, tr);

  // Shape derivative of the trace:
  //   d_t G(eta) psi = G(eta)(dpsi - b deta) - div(v deta).
  Field dtg = dn_exact(state.eta,
                       rhs.dpsi_dt - pointwise_product(tr.b, rhs.deta_dt),
                       base.dn);
  for (int axis = 0; axis < g.dim(); ++axis) {
    dtg -= deriv(pointwise_product(tr.v[axis], rhs.deta_dt), axis);
  }

  // d_t b by differentiating its defining quotient.
  Field num = dtg;
  Field denom = Field::constant(g, 1.0);
  Field dt_denom = Field::zeros(g);
  for (int axis = 0; axis < g.dim(); ++axis) {
    const Field eta_x = deriv(state.eta, axis);
    const Field psi_x = deriv(state.psi, axis);
    const Field deta_x = deriv(rhs.deta_dt, axis);
    const Field dpsi_x = deriv(rhs.dpsi_dt, axis);
    num += pointwise_product(deta_x, psi_x) +
           pointwise_product(eta_x, dpsi_x);
    denom += pointwise_product(eta_x, eta_x);
    dt_denom += 2.0 * pointwise_product(eta_x, deta_x);
  }
  const Field dtb =
      pointwise_divide(num - pointwise_product(tr.b, dt_denom), denom);

  Field a = Field::constant(g, params.gravity) + dtb;
  for (int axis = 0; axis < g.dim(); ++axis) {
    a += pointwise_product(tr.v[axis], deriv(tr.b, axis));
  }
  return a;
}

}  // namespace parawave
