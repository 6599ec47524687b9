#pragma once

#include "parawave/field.hpp"

namespace parawave {

// Mean-based discrete L2 norm: sqrt(mean of squares). By Parseval (with the
// 1/n^d forward convention) this equals the plain l2 norm of the spectrum.
double l2_norm(const Field& f);

double linf_norm(const Field& f);

// Sobolev norm: ||f||_{H^s}^2 = sum_xi (1 + |xi|^2)^s |f^(xi)|^2.
double sobolev_norm(const Field& f, double s);

// Zygmund norm: sup_q 2^{qs} ||Delta_q f||_{L^inf} over the grid's blocks.
double zygmund_norm(const Field& f, double s);

// Discrete W^{1,inf} norm: ||f||_inf + ||grad f||_inf.
double w1inf_norm(const Field& f);

// max over grid of |grad f| (the steepness when f is a surface elevation).
double max_slope(const Field& f);

}  // namespace parawave
