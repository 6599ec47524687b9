#pragma once

#include <vector>

#include "parawave/symbol.hpp"
#include "parawave/traces.hpp"

namespace parawave {

// Symmetrizer symbols built from the Taylor coefficient a and the principal
// symbol lambda of the Dirichlet-Neumann operator: gamma = sqrt(a lambda)
// and q = sqrt(a / lambda), so gamma q = a and q lambda = gamma pointwise.
SymbolRep symm_gamma(const Field& eta, const Field& a);
SymbolRep symm_q(const Field& eta, const Field& a);

// Good unknowns of the symmetrized system at regularity s, one component
// per horizontal dimension:
//   u_s = <D>^s v + T_zeta <D>^s b   (zeta = grad eta),
//   theta_s = T_q <D>^s zeta.
struct GoodUnknowns {
  std::vector<Field> u_s;
  std::vector<Field> theta_s;
};

// Assembles the good unknowns with a supplied Taylor coefficient. Throws
// TaylorSignViolation when min a <= 0 (sqrt(a) undefined).
GoodUnknowns good_unknowns(const WaveState& state, const WaveParams& params,
                           double s, const Field& a);

// Same, computing a via the shape-derivative route.
GoodUnknowns good_unknowns(const WaveState& state, const WaveParams& params,
                           double s);

// E_s = sum ||u_s||_{L2}^2 + sum ||theta_s||_{L2}^2.
double symmetrized_energy(const WaveState& state, const WaveParams& params,
                          double s);

// Conserved energy of the unregularized flow:
//   H = 1/2 int psi G(eta) psi + 1/2 g int eta^2.
double hamiltonian(const WaveState& state, const WaveParams& params);

}  // namespace parawave
