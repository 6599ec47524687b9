#pragma once

#include "parawave/field.hpp"

namespace parawave {

// Largest retained integer mode of the 2/3-rule: modes with |j| > kc on any
// axis are zeroed. kc < n/3, so products of two fields band-limited to kc
// are alias-exact on the retained band.
int dealias_cutoff(const Grid& grid);

// Zeroes every mode with |j| > dealias_cutoff on some axis.
Field dealias_truncate(const Field& f);

// Pointwise product followed by the 2/3-rule truncation.
Field dealias_product(const Field& a, const Field& b);

// True when every mode with |j| > dealias_cutoff vanishes (relative to the
// field's largest coefficient).
bool is_band_limited(const Field& f, double rel_tol = 1e-13);

}  // namespace parawave
