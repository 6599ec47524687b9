#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "parawave/field.hpp"

namespace parawave {

// Frequency profile of one separable term; sampled on the wavenumber
// lattice. Profiles must satisfy the reality condition
// p(-xi) = conj(p(xi)) so that the quantization preserves real fields.
// A profile may be singular at xi = 0 (e.g. |xi|^{-1/2}); non-finite values
// at the origin are treated as 0 (the quantization drops the mean mode),
// non-finite values elsewhere raise SymbolUndefined.
using SymbolProfile =
    std::function<std::complex<double>(const std::array<double, 2>&)>;

// Pointwise evaluation p(x_i, xi): the spatial argument is a flattened grid
// index (symbols are only ever evaluated at grid points).
using PointwiseSymbol = std::function<std::complex<double>(
    std::size_t, const std::array<double, 2>&)>;

struct SymbolTerm {
  Field coefficient;
  SymbolProfile profile;
};

// Symbol p(x, xi) of a given order m with coefficient regularity rho
// (the Zygmund index the coefficients are assumed to have; it only enters
// the expected orders of calculus remainders). Representations:
//  - a separable sum  p = sum_t coefficient_t(x) * profile_t(xi), and/or
//  - a pointwise evaluator.
// When both are present they must agree on the grid x lattice to 1e-10
// (checked on a deterministic subsample at construction).
class SymbolRep {
 public:
  SymbolRep() = default;

  static SymbolRep separable(const Grid& grid, std::vector<SymbolTerm> terms,
                             double order, double coef_regularity);
  static SymbolRep multiplier(const Grid& grid, SymbolProfile profile,
                              double order);
  static SymbolRep pointwise(const Grid& grid, PointwiseSymbol eval,
                             double order, double coef_regularity);

  // Attaches the other representation (returns a copy with it set) and
  // cross-checks agreement.
  SymbolRep with_pointwise(PointwiseSymbol eval) const;

  bool empty() const { return !has_separable() && !has_pointwise(); }
  bool has_separable() const { return !terms_.empty(); }
  bool has_pointwise() const { return static_cast<bool>(pointwise_); }

  const Grid& grid() const;
  double order() const { return order_; }
  double coef_regularity() const { return coef_regularity_; }
  const std::vector<SymbolTerm>& terms() const { return terms_; }
  const PointwiseSymbol& pointwise_eval() const { return pointwise_; }

  // Evaluates through whichever representation is available (separable
  // preferred). Throws SymbolUndefined when empty.
  std::complex<double> eval(std::size_t x_index,
                            const std::array<double, 2>& xi) const;

  // Complex conjugate symbol (coefficients are real fields, so only the
  // profiles are conjugated).
  SymbolRep conjugate() const;

 private:
  std::optional<Grid> grid_;
  std::vector<SymbolTerm> terms_;
  PointwiseSymbol pointwise_;
  double order_ = 0.0;
  double coef_regularity_ = 0.0;
};

// Product symbol (ab)(x,xi) = a(x,xi) b(x,xi); order adds, coefficient
// regularity is the min of the two.
SymbolRep symbol_product(const SymbolRep& a, const SymbolRep& b);

}  // namespace parawave
