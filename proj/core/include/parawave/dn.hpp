#pragma once

#include "parawave/elliptic.hpp"
#include "parawave/symbol.hpp"

namespace parawave {

struct DnParams {
  double depth = 1.0;
  BottomKind bottom = BottomKind::flat;
  int nz = 32;
  double delta = 0.0;  // 0 = automatic smoothing scale
  SolverOptions solver;
};

// Surface trace of the solved potential:
//   G(eta) psi = ((1 + |grad rho|^2) / dz rho) dz phi - grad rho . grad phi
// evaluated at z = 0.
Field dn_trace(const FlattenedDomain& dom, const PotentialSolution& sol);

// Full Dirichlet-to-Neumann pipeline: flatten, solve, trace.
Field dn_exact(const Field& eta, const Field& psi, const DnParams& params);

// Principal symbol
//   lambda(x, xi) = sqrt((1 + |grad eta|^2) |xi|^2 - (grad eta . xi)^2),
// which reduces to |xi| in one dimension.
SymbolRep dn_symbol(const Field& eta);

// Paradifferential principal part T_lambda psi.
Field dn_para(const Field& eta, const Field& psi);

// First-order factorization of the flattened operator at the surface:
//   a_minus + a_plus = -i beta . xi,  a_minus * a_plus = -alpha |xi|^2,
// with Re a_minus < 0 < Re a_plus away from xi = 0.
struct SymbolFactors {
  SymbolRep a_minus;
  SymbolRep a_plus;
};
SymbolFactors factorize_symbols(const FlattenedDomain& dom,
                                double coef_regularity = 1.0);

struct DnLipschitzReport {
  double diff_norm = 0.0;   // ||(G(eta1) - G(eta2)) f||_{H^{s-3/2}}
  double eta_gap = 0.0;     // ||eta1 - eta2||_{H^{s-1/2}}
  double f_norm = 0.0;      // ||f||_{H^s}
  double ratio = 0.0;       // diff_norm / (eta_gap * f_norm)
  bool exact_zero = false;  // identical surfaces: difference at the floor
};

// Shape-Lipschitz probe of the map at regularity s: both surfaces are solved
// with the same discretization so the ratio isolates the surface dependence.
DnLipschitzReport dn_lipschitz_probe(const Field& eta1, const Field& eta2,
                                     const Field& f, double s,
                                     const DnParams& params);

}  // namespace parawave
