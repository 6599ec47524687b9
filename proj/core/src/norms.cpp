#include "parawave/norms.hpp"

#include <cmath>

#include "parawave/lp.hpp"
#include "parawave/multiplier.hpp"

namespace parawave {

double l2_norm(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s / static_cast<double>(f.size()));
}

double linf_norm(const Field& f) { return f.max_abs(); }

double sobolev_norm(const Field& f, double s) {
  const Grid& grid = f.grid();
  const auto& spec = f.spectrum();
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto xi = grid.wavenumber(i);
    const double w = std::pow(1.0 + xi[0] * xi[0] + xi[1] * xi[1], s);
    acc += w * std::norm(spec[i]);
  }
  return std::sqrt(acc);
}

double zygmund_norm(const Field& f, double s) {
  double best = 0.0;
  const int kmax = f.grid().lp_block_count();
  for (int q = 0; q <= kmax; ++q) {
    best = std::max(best, linf_norm(lp_block(f, q)) * std::pow(2.0, q * s));
  }
  return best;
}

double max_slope(const Field& f) {
  const int d = f.grid().dim();
  if (d == 1) return linf_norm(deriv(f, 0));
  const Field fx = deriv(f, 0);
  const Field fy = deriv(f, 1);
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    m = std::max(m, std::hypot(fx[i], fy[i]));
  }
  return m;
}

double w1inf_norm(const Field& f) { return linf_norm(f) + max_slope(f); }

}  // namespace parawave
