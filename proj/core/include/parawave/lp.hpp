#pragma once

#include "parawave/field.hpp"

namespace parawave {

// Smooth transition S(t): 1 for t <= 0, 0 for t >= 1, strictly decreasing
// in between; built from exp(-1/t) bump factors.
double smooth_step(double t);

// Radial dyadic cutoff kappa(|theta|): 1 for |theta| <= 1.1, 0 for
// |theta| >= 1.9, kappa(theta) = smooth_step((|theta| - 1.1) / 0.8).
double lp_kappa(double abs_theta);

// kappa_k(xi) = kappa(2^-k |xi|); k may be negative.
double lp_kappa_scaled(int k, double abs_xi);

// Spectral weight of block k at radius |xi|.
double lp_block_weight(int k, double abs_xi);

// Low-pass S_k f = kappa_k(D) f; k may be any integer.
Field lp_lowpass(const Field& f, int k);

// Dyadic block: Delta_0 = S_0 and Delta_k = S_k - S_{k-1} for k >= 1.
// Blocks above the grid's dyadic range are identically zero.
Field lp_block(const Field& f, int k);

// All blocks 0..grid.lp_block_count(); they sum to f exactly on the grid.
std::vector<Field> lp_decompose(const Field& f);

}  // namespace parawave
