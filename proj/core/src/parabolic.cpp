#include "parawave/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "parawave/errors.hpp"
#include "parawave/multiplier.hpp"
#include "parawave/norms.hpp"
#include "parawave/paradiff.hpp"

namespace parawave {

namespace {

bool is_origin(const std::array<double, 2>& xi) {
  return xi[0] == 0.0 && xi[1] == 0.0;
}

// x-mean symbol sampled on the lattice; singular origin values count as 0.
std::vector<std::complex<double>> sample_mean_symbol(const SymbolRep& p) {
  const Grid& g = p.grid();
  std::vector<std::complex<double>> pbar(g.size(), 0.0);
  if (p.has_separable()) {
    for (const auto& term : p.terms()) {
      const double cm = term.coefficient.mean();
      for (std::size_t s = 0; s < g.size(); ++s) {
        const auto xi = g.wavenumber(s);
        const std::complex<double> v = term.profile(xi);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
          if (is_origin(xi)) continue;
          throw SymbolUndefined("parabolic_evolve: non-finite profile value");
        }
        pbar[s] += cm * v;
      }
    }
    return pbar;
  }
  const double inv = 1.0 / static_cast<double>(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) {
    const auto xi = g.wavenumber(s);
    std::complex<double> acc = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x) {
      const std::complex<double> v = p.eval(x, xi);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        if (is_origin(xi)) {
          acc = 0.0;
          break;
        }
        throw SymbolUndefined("parabolic_evolve: non-finite symbol value");
      }
      acc += v;
    }
    pbar[s] = acc * inv;
  }
  return pbar;
}

void check_ellipticity(const SymbolRep& p) {
  const Grid& g = p.grid();
  const std::size_t stride = std::max<std::size_t>(1, g.size() / 4096);
  double worst = 1e300;
  for (std::size_t s = 0; s < g.size(); ++s) {
    const auto xi = g.wavenumber(s);
    if (is_origin(xi)) continue;
    const double scale =
        std::pow(std::hypot(xi[0], xi[1]), p.order());
    for (std::size_t x = 0; x < g.size(); x += stride) {
      const std::complex<double> v = p.eval(x, xi);
      if (!std::isfinite(v.real())) {
        throw SymbolUndefined("parabolic_evolve: non-finite symbol value");
      }
      worst = std::min(worst, v.real() / scale);
    }
  }
  if (worst <= 0.0) {
    throw EllipticityViolation(
        "parabolic_evolve: Re p / |xi|^m reaches " + std::to_string(worst));
  }
}

}  // namespace

std::vector<Field> parabolic_evolve(const SymbolRep& p, const Field& w0,
                                    const std::function<Field(double)>& forcing,
                                    double z0, double z1, int nz) {
  if (p.empty()) throw SymbolUndefined("parabolic_evolve: empty symbol");
  require_same_grid(p.grid(), w0.grid(), "parabolic_evolve");
  if (nz < 1) throw Error("parabolic_evolve: nz must be positive");
  if (!(z1 > z0)) throw Error("parabolic_evolve: need z1 > z0");
  const Grid& g = w0.grid();

  check_ellipticity(p);
  const auto pbar = sample_mean_symbol(p);

  // Residual symbol p - pbar and a bound on its sup, used to pick substeps.
  SymbolRep resid;
  double resid_sup = 0.0;
  if (p.has_separable()) {
    std::vector<SymbolTerm> centered;
    for (const auto& term : p.terms()) {
      Field c = term.coefficient - Field::constant(g, term.coefficient.mean());
      const double camp = c.max_abs();
      if (camp == 0.0) continue;
      double pamp = 0.0;
      for (std::size_t s = 0; s < g.size(); ++s) {
        const auto xi = g.wavenumber(s);
        const std::complex<double> v = term.profile(xi);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) continue;
        pamp = std::max(pamp, std::abs(v));
      }
      resid_sup += camp * pamp;
      centered.push_back({std::move(c), term.profile});
    }
    if (!centered.empty()) {
      resid = SymbolRep::separable(g, std::move(centered), p.order(),
                                   p.coef_regularity());
    }
  } else {
    const double L = g.length_scale();
    auto eval = p.pointwise_eval();
    auto lookup = [g, L, pbar](const std::array<double, 2>& xi) {
      return pbar[g.spectral_index(
          static_cast<int>(std::lround(xi[0] * L)),
          static_cast<int>(std::lround(xi[1] * L)))];
    };
    for (std::size_t s = 0; s < g.size(); ++s) {
      const auto xi = g.wavenumber(s);
      if (is_origin(xi)) continue;
      for (std::size_t x = 0; x < g.size(); ++x) {
        resid_sup = std::max(resid_sup, std::abs(eval(x, xi) - pbar[s]));
      }
    }
    if (resid_sup > 0.0) {
      resid = SymbolRep::pointwise(
          g,
          [eval, lookup](std::size_t x, const std::array<double, 2>& xi) {
            return eval(x, xi) - lookup(xi);
          },
          p.order(), p.coef_regularity());
    }
  }

  const double level_h = (z1 - z0) / nz;
  const int substeps =
      std::max(1, static_cast<int>(std::ceil(level_h * resid_sup / 0.5)));
  const double h = level_h / substeps;

  std::vector<std::complex<double>> propagator(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) {
    propagator[s] = std::exp(-h * pbar[s]);
  }

  std::vector<Field> levels;
  levels.reserve(nz + 1);
  levels.push_back(w0);
  Field w = w0;
  for (int step = 0; step < nz; ++step) {
    for (int sub = 0; sub < substeps; ++sub) {
      const double z = z0 + step * level_h + sub * h;
      Field rhs = w;
      if (!resid.empty()) rhs -= h * paradiff_apply(resid, w);
      if (forcing) {
        Field f = forcing(z);
        require_same_grid(g, f.grid(), "parabolic_evolve forcing");
        rhs += h * f;
      }
      w = multiplier_apply_sampled(rhs, propagator);
    }
    levels.push_back(w);
  }
  return levels;
}

}  // namespace parawave
