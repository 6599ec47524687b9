#pragma once

#include "parawave/field.hpp"
#include "parawave/symbol.hpp"

namespace parawave {

// Paradifferential quantization
//   T_p u = sum_{j>=0} Op[(S_{j-3} p)(x, .)] Delta_j u,
// where S_{j-3} smooths the symbol's x-dependence two octaves plus one below
// the block and Delta_j are the dyadic blocks. The lowest block is retained,
// so T_1 = Id exactly and x-independent symbols reduce to plain Fourier
// multipliers mode-for-mode.
//
// Separable representations use the fast per-term path. Symbols that are
// only pointwise fall back to a dense per-mode sum and are limited to small
// grids (<= 1024 points).
Field paradiff_apply(const SymbolRep& p, const Field& u);

// Adjoint of T_p with respect to the mean-based L2 inner product.
Field paradiff_adjoint_apply(const SymbolRep& p, const Field& v);

// Bony paraproduct T_a u: the order-zero quantization with coefficient a and
// unit frequency profile.
Field paraproduct(const Field& a, const Field& u);

// Bony remainder R(a, u) = (a u)_dealiased - T_a u - T_u a, so the
// reconstruction a*u = T_a u + T_u a + R(a, u) holds exactly on the grid
// with the 2/3-rule product.
Field bony_remainder(const Field& a, const Field& u);

}  // namespace parawave
