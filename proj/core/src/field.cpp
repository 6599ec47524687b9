#include "parawave/field.hpp"

#include <algorithm>
#include <cmath>

#include "parawave/errors.hpp"
#include "parawave/fft.hpp"

namespace parawave {

Field::Field(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error("Field: value count does not match grid size");
  }
}

Field Field::zeros(const Grid& grid) {
  return Field(grid, std::vector<double>(grid.size(), 0.0));
}

Field Field::constant(const Grid& grid, double value) {
  return Field(grid, std::vector<double>(grid.size(), value));
}

Field Field::sample(const Grid& grid,
                    const std::function<double(double, double)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto p = grid.point(i);
    v[i] = fn(p[0], p[1]);
  }
  return Field(grid, std::move(v));
}

Field Field::from_spectrum(const Grid& grid,
                           std::vector<std::complex<double>> spectrum) {
  if (spectrum.size() != grid.size()) {
    throw Error("Field::from_spectrum: spectrum size does not match grid");
  }
  double scale = 0.0;
  for (const auto& c : spectrum) scale = std::max(scale, std::abs(c));
  const double tol = 1e-12 * std::max(scale, 1e-300);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const auto m = grid.modes(i);
    // The reflection of a Nyquist mode is itself, forcing it to be real.
    const int jx = m[0] == -grid.n() / 2 ? m[0] : -m[0];
    const int jy = m[1] == -grid.n() / 2 ? m[1] : -m[1];
    const auto mirror = spectrum[grid.spectral_index(jx, jy)];
    if (std::abs(mirror - std::conj(spectrum[i])) > tol) {
      throw NonHermitianMultiplier(
          "Field::from_spectrum: spectrum is not Hermitian-symmetric");
    }
  }
  auto values = detail::fft_inverse(grid, spectrum);
  Field f(grid, std::move(values));
  f.spectrum_ = std::make_shared<const std::vector<std::complex<double>>>(
      std::move(spectrum));
  return f;
}

const std::vector<std::complex<double>>& Field::spectrum() const {
  if (!spectrum_) {
    spectrum_ = std::make_shared<const std::vector<std::complex<double>>>(
        detail::fft_forward(grid_, values_));
  }
  return *spectrum_;
}

double Field::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(grid_, other.grid_, "Field::operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  spectrum_.reset();
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(grid_, other.grid_, "Field::operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  spectrum_.reset();
  return *this;
}

Field& Field::operator*=(double scalar) {
  for (auto& v : values_) v *= scalar;
  spectrum_.reset();
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double scalar, Field f) { return f *= scalar; }
Field operator*(Field f, double scalar) { return f *= scalar; }

Field pointwise_product(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid(), "pointwise_product");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return Field(a.grid(), std::move(v));
}

Field pointwise_divide(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid(), "pointwise_divide");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] / b[i];
  return Field(a.grid(), std::move(v));
}

Field pointwise_apply(const Field& a, const std::function<double(double)>& fn) {
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(a[i]);
  return Field(a.grid(), std::move(v));
}

}  // namespace parawave
