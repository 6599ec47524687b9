#include "parawave/dn.hpp"

#include <cmath>

#include "parawave/errors.hpp"
#include "parawave/flatten.hpp"
#include "parawave/multiplier.hpp"
#include "parawave/norms.hpp"
#include "parawave/paradiff.hpp"

namespace parawave {

Field dn_trace(const FlattenedDomain& dom, const PotentialSolution& sol) {
  const Grid& g = dom.grid;
  if (static_cast<int>(sol.levels.size()) != dom.cheb.count()) {
    throw Error("dn_trace: level count does not match the domain");
  }
  const bool twod = g.dim() == 2;
  const Eigen::MatrixXd& D1 = dom.cheb.d1();

  std::vector<double> dzphi(g.size(), 0.0);
  for (int m = 0; m < dom.cheb.count(); ++m) {
    const double w = D1(0, m);
    if (w == 0.0) continue;
    const auto& vals = sol.levels[m].values();
    for (std::size_t i = 0; i < g.size(); ++i) dzphi[i] += w * vals[i];
  }

  const Field gx = deriv(sol.levels[0], 0);
  const Field& rx = dom.rho_x[0];
  const Field& rz = dom.rho_z[0];
  std::vector<double> out(g.size());
  if (twod) {
    const Field gy = deriv(sol.levels[0], 1);
    const Field& ry = dom.rho_y[0];
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double grad2 = rx[i] * rx[i] + ry[i] * ry[i];
      out[i] = (1.0 + grad2) / rz[i] * dzphi[i] - rx[i] * gx[i] - ry[i] * gy[i];
    }
  } else {
    for (std::size_t i = 0; i < g.size(); ++i) {
      out[i] = (1.0 + rx[i] * rx[i]) / rz[i] * dzphi[i] - rx[i] * gx[i];
    }
  }
  return Field(g, std::move(out));
}

Field dn_exact(const Field& eta, const Field& psi, const DnParams& params) {
  require_same_grid(eta.grid(), psi.grid(), "dn_exact");
  const FlattenedDomain dom = build_flattening(
      eta.grid(), eta, params.depth, params.bottom, params.nz, params.delta);
  const PotentialSolution sol = solve_laplace(dom, psi, {}, params.solver);
  return dn_trace(dom, sol);
}

SymbolRep dn_symbol(const Field& eta) {
  const Grid& g = eta.grid();
  if (g.dim() == 1) {
    return SymbolRep::multiplier(
        g,
        [](const std::array<double, 2>& xi) {
          return std::complex<double>(std::hypot(xi[0], xi[1]), 0.0);
        },
        1.0);
  }
  const Field gx = deriv(eta, 0);
  const Field gy = deriv(eta, 1);
  return SymbolRep::pointwise(
      g,
      [gx, gy](std::size_t ix, const std::array<double, 2>& xi) {
        const double g1 = gx[ix], g2 = gy[ix];
        const double xi2 = xi[0] * xi[0] + xi[1] * xi[1];
        const double dot = g1 * xi[0] + g2 * xi[1];
        return std::complex<double>(
            std::sqrt((1.0 + g1 * g1 + g2 * g2) * xi2 - dot * dot), 0.0);
      },
      1.0, 1.0);
}

Field dn_para(const Field& eta, const Field& psi) {
  require_same_grid(eta.grid(), psi.grid(), "dn_para");
  return paradiff_apply(dn_symbol(eta), psi);
}

SymbolFactors factorize_symbols(const FlattenedDomain& dom,
                                double coef_regularity) {
  const Grid& g = dom.grid;
  const EllipticCoefficients co = elliptic_coefficients(dom);
  const Field alpha = co.alpha[0];
  const Field bx = co.beta_x[0];
  const Field by =
      g.dim() == 2 ? co.beta_y[0] : Field::zeros(g);

  auto eval = [alpha, bx, by](int sign) {
    return [alpha, bx, by, sign](std::size_t ix,
                                 const std::array<double, 2>& xi) {
      const double xi2 = xi[0] * xi[0] + xi[1] * xi[1];
      const double bdot = bx[ix] * xi[0] + by[ix] * xi[1];
      const double rad = std::sqrt(4.0 * alpha[ix] * xi2 - bdot * bdot);
      return 0.5 * std::complex<double>(sign * rad, -bdot);
    };
  };

  SymbolFactors f{SymbolRep(), SymbolRep()};
  if (g.dim() == 1) {
    // One-dimensional symbols split into separable terms; the pointwise
    // evaluator is attached as a cross-check.
    const Field s = 0.5 * pointwise_apply(
                              4.0 * alpha - pointwise_product(bx, bx),
                              [](double v) { return std::sqrt(v); });
    auto absxi = [](const std::array<double, 2>& xi) {
      return std::complex<double>(std::hypot(xi[0], xi[1]), 0.0);
    };
    auto ixi = [](const std::array<double, 2>& xi) {
      return std::complex<double>(0.0, xi[0]);
    };
    std::vector<SymbolTerm> tminus, tplus;
    tminus.push_back({-0.5 * bx, ixi});
    tminus.push_back({-1.0 * s, absxi});
    tplus.push_back({-0.5 * bx, ixi});
    tplus.push_back({s, absxi});
    f.a_minus = SymbolRep::separable(g, std::move(tminus), 1.0, coef_regularity)
                    .with_pointwise(eval(-1));
    f.a_plus = SymbolRep::separable(g, std::move(tplus), 1.0, coef_regularity)
                   .with_pointwise(eval(+1));
  } else {
    f.a_minus = SymbolRep::pointwise(g, eval(-1), 1.0, coef_regularity);
    f.a_plus = SymbolRep::pointwise(g, eval(+1), 1.0, coef_regularity);
  }
  return f;
}

DnLipschitzReport dn_lipschitz_probe(const Field& eta1, const Field& eta2,
                                     const Field& f, double s,
                                     const DnParams& params) {
  const Field g1 = dn_exact(eta1, f, params);
  const Field g2 = dn_exact(eta2, f, params);
  DnLipschitzReport rep;
  rep.diff_norm = sobolev_norm(g1 - g2, s - 1.5);
  rep.eta_gap = sobolev_norm(eta1 - eta2, s - 0.5);
  rep.f_norm = sobolev_norm(f, s);
  const double scale = sobolev_norm(g1, s - 1.5);
  rep.exact_zero = rep.diff_norm <= 1e-12 * std::max(scale, 1e-300);
  if (rep.eta_gap > 0.0 && rep.f_norm > 0.0) {
    rep.ratio = rep.diff_norm / (rep.eta_gap * rep.f_norm);
  }
  return rep;
}

}  // namespace parawave
