#pragma once

#include <cstdint>

#include "parawave/field.hpp"

namespace parawave {

// Counter-based deterministic RNG: every draw is a pure function of
// (seed, stream, index), so ensembles are indexable and independent of
// evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t stream, std::uint64_t index) const;
  // Uniform in [0, 1).
  double uniform(std::uint64_t stream, std::uint64_t index) const;
  // Uniform in [0, 2*pi).
  double phase(std::uint64_t stream, std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// Mean-zero field with |spectrum(k)| ~ |k|^-decay and seeded phases,
// truncated at the 2/3-rule cutoff, then rescaled so max|grad| = steepness.
// decay = (s + 1/2) + d/2 gives an H^{s+1/2-} surrogate.
Field rough_field(const Grid& grid, const CounterRng& rng,
                  std::uint64_t stream, double decay, double steepness);

// Smooth mean-zero random field: Gaussian spectral envelope
// exp(-(|k|/k0)^2) with seeded phases, rescaled to the given steepness.
Field smooth_random_field(const Grid& grid, const CounterRng& rng,
                          std::uint64_t stream, double k0, double steepness);

}  // namespace parawave
