#include "parawave/symbol.hpp"

#include <cmath>

#include "parawave/errors.hpp"

namespace parawave {

namespace {

void check_agreement(const SymbolRep& s) {
  if (!s.has_separable() || !s.has_pointwise()) return;
  const Grid& g = s.grid();
  // Deterministic subsample: stride chosen so the check stays O(sqrt) of a
  // full sweep on large grids.
  const std::size_t nx = g.size();
  const std::size_t sx = std::max<std::size_t>(1, nx / 64);
  double scale = 1.0;
  for (std::size_t ix = 0; ix < nx; ix += sx) {
    for (std::size_t is = 0; is < nx; is += sx) {
      const auto xi = g.wavenumber(is);
      std::complex<double> sep = 0.0;
      for (const auto& t : s.terms()) {
        sep += t.coefficient[ix] * t.profile(xi);
      }
      const auto pw = s.pointwise_eval()(ix, xi);
      scale = std::max({scale, std::abs(sep), std::abs(pw)});
      if (std::abs(sep - pw) > 1e-10 * scale) {
        throw Error(
            "SymbolRep: separable and pointwise representations disagree");
      }
    }
  }
}

}  // namespace

SymbolRep SymbolRep::separable(const Grid& grid, std::vector<SymbolTerm> terms,
                               double order, double coef_regularity) {
  SymbolRep s;
  s.grid_ = grid;
  for (const auto& t : terms) {
    require_same_grid(grid, t.coefficient.grid(), "SymbolRep::separable");
  }
  s.terms_ = std::move(terms);
  s.order_ = order;
  s.coef_regularity_ = coef_regularity;
  return s;
}

SymbolRep SymbolRep::multiplier(const Grid& grid, SymbolProfile profile,
                                double order) {
  std::vector<SymbolTerm> terms;
  terms.push_back({Field::constant(grid, 1.0), std::move(profile)});
  // An x-independent symbol is as smooth as one asks; the regularity slot is
  // irrelevant for it, keep it large.
  return separable(grid, std::move(terms), order, 1e9);
}

SymbolRep SymbolRep::pointwise(const Grid& grid, PointwiseSymbol eval,
                               double order, double coef_regularity) {
  SymbolRep s;
  s.grid_ = grid;
  s.pointwise_ = std::move(eval);
  s.order_ = order;
  s.coef_regularity_ = coef_regularity;
  return s;
}

SymbolRep SymbolRep::with_pointwise(PointwiseSymbol eval) const {
  SymbolRep s = *this;
  s.pointwise_ = std::move(eval);
  check_agreement(s);
  return s;
}

const Grid& SymbolRep::grid() const {
  if (!grid_) throw SymbolUndefined("SymbolRep: empty symbol has no grid");
  return *grid_;
}

std::complex<double> SymbolRep::eval(std::size_t x_index,
                                     const std::array<double, 2>& xi) const {
  if (has_separable()) {
    std::complex<double> acc = 0.0;
    for (const auto& t : terms_) acc += t.coefficient[x_index] * t.profile(xi);
    return acc;
  }
  if (has_pointwise()) return pointwise_(x_index, xi);
  throw SymbolUndefined("SymbolRep::eval: no representation available");
}

SymbolRep SymbolRep::conjugate() const {
  SymbolRep s = *this;
  for (auto& t : s.terms_) {
    auto base = t.profile;
    t.profile = [base](const std::array<double, 2>& xi) {
      return std::conj(base(xi));
    };
  }
  if (pointwise_) {
    auto base = pointwise_;
    s.pointwise_ = [base](std::size_t ix, const std::array<double, 2>& xi) {
      return std::conj(base(ix, xi));
    };
  }
  return s;
}

SymbolRep symbol_product(const SymbolRep& a, const SymbolRep& b) {
  if (a.empty() || b.empty()) {
    throw SymbolUndefined("symbol_product: operand has no representation");
  }
  require_same_grid(a.grid(), b.grid(), "symbol_product");
  const double order = a.order() + b.order();
  const double reg = std::min(a.coef_regularity(), b.coef_regularity());
  if (a.has_separable() && b.has_separable()) {
    std::vector<SymbolTerm> terms;
    for (const auto& ta : a.terms()) {
      for (const auto& tb : b.terms()) {
        auto pa = ta.profile;
        auto pb = tb.profile;
        terms.push_back({pointwise_product(ta.coefficient, tb.coefficient),
                         [pa, pb](const std::array<double, 2>& xi) {
                           return pa(xi) * pb(xi);
                         }});
      }
    }
    return SymbolRep::separable(a.grid(), std::move(terms), order, reg);
  }
  // Fall back to the pointwise product of whatever evaluators exist.
  const SymbolRep ca = a;
  const SymbolRep cb = b;
  return SymbolRep::pointwise(
      a.grid(),
      [ca, cb](std::size_t ix, const std::array<double, 2>& xi) {
        return ca.eval(ix, xi) * cb.eval(ix, xi);
      },
      order, reg);
}

}  // namespace parawave
