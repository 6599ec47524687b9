#include "parawave/energy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include "parawave/errors.hpp"
#include "parawave/format.hpp"
#include "parawave/multiplier.hpp"
#include "parawave/norms.hpp"
#include "parawave/paradiff.hpp"
#include "parawave/taylor.hpp"

namespace parawave {

namespace {

Field sqrt_positive(const Field& a, const char* where) {
  const double amin = *std::min_element(a.values().begin(), a.values().end());
  if (amin <= 0.0) {
    throw TaylorSignViolation(std::string(where) +
                              ": min Taylor coefficient " +
                              format_double(amin) + " is not positive");
  }
  return pointwise_apply(a, [](double t) { return std::sqrt(t); });
}

}  // namespace

SymbolRep symm_gamma(const Field& eta, const Field& a) {
  const Grid& g = eta.grid();
  require_same_grid(g, a.grid(), "symm_gamma");
  const Field root_a = sqrt_positive(a, "symm_gamma");
  if (g.dim() == 1) {
    return SymbolRep::separable(
        g,
        {{root_a,
          [](const std::array<double, 2>& xi) {
            return std::complex<double>(std::sqrt(std::abs(xi[0])), 0.0);
          }}},
        0.5, 0.5);
  }
  const SymbolRep lam = dn_symbol(eta);
  return SymbolRep::pointwise(
      g,
      [lam, root_a](std::size_t i, const std::array<double, 2>& xi) {
        return std::complex<double>(
            root_a[i] * std::sqrt(lam.eval(i, xi).real()), 0.0);
      },
      0.5, 0.5);
}

SymbolRep symm_q(const Field& eta, const Field& a) {
  const Grid& g = eta.grid();
  require_same_grid(g, a.grid(), "symm_q");
  const Field root_a = sqrt_positive(a, "symm_q");
  if (g.dim() == 1) {
    return SymbolRep::separable(
        g,
        {{root_a,
          [](const std::array<double, 2>& xi) {
            return std::complex<double>(1.0 / std::sqrt(std::abs(xi[0])),
                                        0.0);
          }}},
        -0.5, 0.5);
  }
  const SymbolRep lam = dn_symbol(eta);
  return SymbolRep::pointwise(
      g,
      [lam, root_a](std::size_t i, const std::array<double, 2>& xi) {
        return std::complex<double>(
            root_a[i] / std::sqrt(lam.eval(i, xi).real()), 0.0);
      },
      -0.5, 0.5);
}

GoodUnknowns good_unknowns(const WaveState& state, const WaveParams& params,
                           double s, const Field& a) {
  const Grid& g = state.eta.grid();
  require_same_grid(g, a.grid(), "good_unknowns");
  const SymbolRep q = symm_q(state.eta, a);
  const SurfaceTraces tr = compute_traces(state, params);
  const Field b_s = multiplier_apply(tr.b, mult::bessel_pow(s));

  GoodUnknowns out;
  for (int axis = 0; axis < g.dim(); ++axis) {
    const Field zeta = deriv(state.eta, axis);
    out.u_s.push_back(multiplier_apply(tr.v[axis], mult::bessel_pow(s)) +
                      paraproduct(zeta, b_s));
    out.theta_s.push_back(
        paradiff_apply(q, multiplier_apply(zeta, mult::bessel_pow(s))));
  }
  return out;
}

GoodUnknowns good_unknowns(const WaveState& state, const WaveParams& params,
                           double s) {
  return good_unknowns(state, params, s,
                       taylor_shape_derivative(state, params));
}

double symmetrized_energy(const WaveState& state, const WaveParams& params,
                          double s) {
  const GoodUnknowns gu = good_unknowns(state, params, s);
  double e = 0.0;
  for (const Field& u : gu.u_s) e += l2_norm(u) * l2_norm(u);
  for (const Field& t : gu.theta_s) e += l2_norm(t) * l2_norm(t);
  return e;
}

double hamiltonian(const WaveState& state, const WaveParams& params) {
  const Grid& g = state.eta.grid();
  const Field g_psi = dn_exact(state.eta, state.psi, params.dn);
  const double volume = std::pow(g.period(), g.dim());
  return 0.5 * volume *
         (pointwise_product(state.psi, g_psi).mean() +
          params.gravity * pointwise_product(state.eta, state.eta).mean());
}

}  // namespace parawave
