#pragma once

#include <functional>
#include <vector>

#include "parawave/field.hpp"
#include "parawave/symbol.hpp"

namespace parawave {

// Marches the parabolic problem
//   dw/dz + T_p w = f(z),   w(z0) = w0,
// from z0 to z1 and returns the nz+1 equispaced levels w(z0 + j*(z1-z0)/nz).
// forcing may be null (no source term).
//
// Scheme: split p = pbar(xi) + (p - pbar) with pbar the x-mean symbol, apply
// the integrating factor of pbar exactly and the residual explicitly,
//   w <- exp(-h pbar(D)) (w - h T_{p - pbar} w + h f(z)).
// Steps are internally subdivided so h * max|p - pbar| <= 1/2; the scheme is
// exact (up to roundoff) for x-independent symbols without forcing and
// first-order accurate otherwise.
//
// Throws EllipticityViolation unless Re p(x, xi) / |xi|^order stays positive
// on the lattice (xi != 0), and SymbolUndefined for non-finite symbol values
// away from the origin.
std::vector<Field> parabolic_evolve(const SymbolRep& p, const Field& w0,
                                    const std::function<Field(double)>& forcing,
                                    double z0, double z1, int nz);

}  // namespace parawave
