#include "parawave/paradiff.hpp"

#include <cmath>

#include "parawave/errors.hpp"
#include "parawave/fft.hpp"
#include "parawave/lp.hpp"
#include "parawave/products.hpp"

namespace parawave {

namespace {

constexpr std::size_t kDensePathLimit = 1024;

bool self_mirror(const Grid& g, std::size_t i) {
  const auto m = g.modes(i);
  const int nyq = -g.n() / 2;
  return (m[0] == 0 || m[0] == nyq) && (m[1] == 0 || m[1] == nyq);
}

// Samples a frequency profile on the lattice, applying the reality
// conventions: non-finite values at xi = 0 become 0, the imaginary part at
// self-conjugate (Nyquist) modes is dropped, and p(-xi) = conj(p(xi)) is
// enforced.
std::vector<std::complex<double>> sample_profile(const Grid& g,
                                                 const SymbolProfile& prof) {
  std::vector<std::complex<double>> out(g.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto xi = g.wavenumber(i);
    auto v = prof(xi);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      if (xi[0] == 0.0 && xi[1] == 0.0) {
        v = 0.0;
      } else {
        throw SymbolUndefined(
            "paradiff: profile is not finite away from xi = 0");
      }
    }
    if (self_mirror(g, i)) v = v.real();
    out[i] = v;
    scale = std::max(scale, std::abs(v));
  }
  const double tol = 1e-12 * std::max(scale, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto m = g.modes(i);
    const int jx = m[0] == -g.n() / 2 ? m[0] : -m[0];
    const int jy = m[1] == -g.n() / 2 ? m[1] : -m[1];
    if (std::abs(out[g.spectral_index(jx, jy)] - std::conj(out[i])) > tol) {
      throw NonHermitianMultiplier(
          "paradiff: profile violates p(-xi) = conj(p(xi))");
    }
  }
  return out;
}

std::vector<double> block_radii(const Grid& g) {
  std::vector<double> r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto xi = g.wavenumber(i);
    r[i] = std::hypot(xi[0], xi[1]);
  }
  return r;
}

// S_{j-3} applied to a coefficient field, returned in physical space.
std::vector<double> smoothed_coefficient(const Field& c, int j,
                                         const std::vector<double>& radii) {
  const Grid& g = c.grid();
  auto spec = c.spectrum();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec[i] *= lp_kappa_scaled(j - 3, radii[i]);
  }
  return detail::fft_inverse(g, spec);
}

int fold_mode(int m, int n) {
  m %= n;
  if (m < -n / 2) m += n;
  if (m >= n / 2) m -= n;
  return m;
}

Field dense_apply(const SymbolRep& p, const Field& u, bool adjoint) {
  const Grid& g = u.grid();
  if (g.size() > kDensePathLimit) {
    throw Error(
        "paradiff: pointwise-only symbols are limited to grids with <= 1024 "
        "points; provide a separable representation");
  }
  const auto& eval = p.pointwise_eval();
  const std::size_t n = g.size();
  // Column FFTs of the symbol: phat[s] = x-spectrum of p(., xi_s), with the
  // reality conventions of sample_profile applied per column.
  std::vector<std::vector<std::complex<double>>> phat(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto xi = g.wavenumber(s);
    std::vector<std::complex<double>> col(n);
    bool zero_col = false;
    for (std::size_t ix = 0; ix < n; ++ix) {
      auto v = eval(ix, xi);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        if (xi[0] == 0.0 && xi[1] == 0.0) {
          zero_col = true;
          break;
        }
        throw SymbolUndefined(
            "paradiff: pointwise symbol is not finite away from xi = 0");
      }
      if (self_mirror(g, s)) v = v.real();
      col[ix] = v;
    }
    if (zero_col) {
      phat[s].assign(n, 0.0);
    } else {
      phat[s] = detail::fft_forward_complex(g, col);
    }
  }
  const auto radii = block_radii(g);
  const int kmax = g.lp_block_count();
  const auto& uspec = u.spectrum();
  std::vector<std::complex<double>> out(n, 0.0);
  for (int j = 0; j <= kmax; ++j) {
    for (std::size_t s = 0; s < n; ++s) {
      const double bw = lp_block_weight(j, radii[s]);
      if (bw == 0.0) continue;
      const auto ms = g.modes(s);
      for (std::size_t t = 0; t < n; ++t) {
        const double kw = lp_kappa_scaled(j - 3, radii[t]);
        if (kw == 0.0) continue;
        const auto mt = g.modes(t);
        const std::size_t target = g.spectral_index(
            fold_mode(ms[0] + mt[0], g.n()), fold_mode(ms[1] + mt[1], g.n()));
        const auto w = kw * bw * phat[s][t];
        if (!adjoint) {
          out[target] += w * uspec[s];
        } else {
          out[s] += std::conj(w) * uspec[target];
        }
      }
    }
  }
  return Field(g, detail::fft_inverse(g, out));
}

}  // namespace

Field paradiff_apply(const SymbolRep& p, const Field& u) {
  if (p.empty()) throw SymbolUndefined("paradiff_apply: empty symbol");
  require_same_grid(p.grid(), u.grid(), "paradiff_apply");
  const Grid& g = u.grid();
  if (!p.has_separable()) return dense_apply(p, u, false);

  const auto radii = block_radii(g);
  const int kmax = g.lp_block_count();
  const auto& uspec = u.spectrum();
  std::vector<double> acc(g.size(), 0.0);
  std::vector<std::complex<double>> scratch(g.size());
  for (const auto& term : p.terms()) {
    const auto prof = sample_profile(g, term.profile);
    for (int j = 0; j <= kmax; ++j) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        scratch[i] = lp_block_weight(j, radii[i]) * prof[i] * uspec[i];
      }
      const auto block = detail::fft_inverse(g, scratch);
      const auto coef = smoothed_coefficient(term.coefficient, j, radii);
      for (std::size_t i = 0; i < g.size(); ++i) acc[i] += coef[i] * block[i];
    }
  }
  return Field(g, std::move(acc));
}

Field paradiff_adjoint_apply(const SymbolRep& p, const Field& v) {
  if (p.empty()) throw SymbolUndefined("paradiff_adjoint_apply: empty symbol");
  require_same_grid(p.grid(), v.grid(), "paradiff_adjoint_apply");
  const Grid& g = v.grid();
  if (!p.has_separable()) return dense_apply(p, v, true);

  const auto radii = block_radii(g);
  const int kmax = g.lp_block_count();
  std::vector<std::complex<double>> out(g.size(), 0.0);
  for (const auto& term : p.terms()) {
    const auto prof = sample_profile(g, term.profile);
    for (int j = 0; j <= kmax; ++j) {
      const auto coef = smoothed_coefficient(term.coefficient, j, radii);
      std::vector<double> m(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) m[i] = coef[i] * v[i];
      auto mspec = detail::fft_forward(g, m);
      for (std::size_t i = 0; i < g.size(); ++i) {
        out[i] += lp_block_weight(j, radii[i]) * std::conj(prof[i]) * mspec[i];
      }
    }
  }
  return Field(g, detail::fft_inverse(g, out));
}

Field paraproduct(const Field& a, const Field& u) {
  require_same_grid(a.grid(), u.grid(), "paraproduct");
  auto one = [](const std::array<double, 2>&) {
    return std::complex<double>(1.0, 0.0);
  };
  std::vector<SymbolTerm> terms;
  terms.push_back({a, one});
  return paradiff_apply(SymbolRep::separable(a.grid(), std::move(terms), 0.0, 0.0),
                        u);
}

Field bony_remainder(const Field& a, const Field& u) {
  return dealias_product(a, u) - paraproduct(a, u) - paraproduct(u, a);
}

}  // namespace parawave
