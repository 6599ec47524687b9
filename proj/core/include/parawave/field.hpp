#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "parawave/grid.hpp"

namespace parawave {

// Real scalar field on a Grid with a lazily computed, cached spectrum.
// Fields have value semantics; all operations return new fields. A single
// Field object is not safe to share across threads (the cache is unsynchronized);
// distinct objects are independent.
class Field {
 public:
  Field(Grid grid, std::vector<double> values);

  static Field zeros(const Grid& grid);
  static Field constant(const Grid& grid, double value);
  // Samples fn at the grid points. fn receives (x, y); y = 0 when d = 1.
  static Field sample(const Grid& grid,
                      const std::function<double(double, double)>& fn);
  // Builds the field with the given spectrum. The spectrum must be
  // Hermitian-symmetric (c(-j) = conj(c(j)) within a relative tolerance of
  // 1e-12); otherwise NonHermitianMultiplier is thrown.
  static Field from_spectrum(const Grid& grid,
                             std::vector<std::complex<double>> spectrum);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  // Spectrum with the 1/n^d-forward convention, cached after first use.
  const std::vector<std::complex<double>>& spectrum() const;

  double mean() const;
  double max_abs() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double scalar);

 private:
  Grid grid_;
  std::vector<double> values_;
  mutable std::shared_ptr<const std::vector<std::complex<double>>> spectrum_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double scalar, Field f);
Field operator*(Field f, double scalar);

// Plain pointwise product / quotient (no dealiasing).
Field pointwise_product(const Field& a, const Field& b);
Field pointwise_divide(const Field& a, const Field& b);
Field pointwise_apply(const Field& a,
                      const std::function<double(double)>& fn);

}  // namespace parawave
