#include <cmath>
#include <complex>

#include "doctest.h"
#include "parawave/errors.hpp"
#include "parawave/field.hpp"
#include "parawave/lp.hpp"
#include "parawave/multiplier.hpp"
#include "parawave/norms.hpp"
#include "parawave/products.hpp"
#include "parawave/random_fields.hpp"
#include "test_support.hpp"

using namespace parawave;
using testing::random_values;

namespace {
Field cosine(const Grid& g, int k, double amp = 1.0) {
  return Field::sample(g, [&](double x, double) { return amp * std::cos(k * x / g.length_scale()); });
}
Field sine(const Grid& g, int k, double amp = 1.0) {
  return Field::sample(g, [&](double x, double) { return amp * std::sin(k * x / g.length_scale()); });
}
}  // namespace

TEST_CASE("grid validates its parameters") {
  CHECK_THROWS_AS(Grid(3, 64), Error);
  CHECK_THROWS_AS(Grid(1, 48), Error);
  CHECK_THROWS_AS(Grid(1, 8), Error);
  CHECK_THROWS_AS(Grid(1, 64, -1.0), Error);
  Grid g(2, 32, 2.0);
  CHECK(g.size() == 1024);
  CHECK(g.dx() == doctest::Approx(2.0 * M_PI * 2.0 / 32));
}

TEST_CASE("spectrum round trip is exact to 1e-12") {
  for (int dim : {1, 2}) {
    Grid g(dim, dim == 1 ? 64 : 16);
    Field f = random_values(g, 7);
    Field back = Field::from_spectrum(g, f.spectrum());
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      m = std::max(m, std::abs(f[i] - back[i]));
    }
    CHECK(m <= 1e-12 * f.max_abs());
  }
}

TEST_CASE("forward transform carries the 1/n^d factor") {
  // Frozen normalization: cos(3x) -> coefficients exactly 1/2 at modes +-3,
  // sin(3x) -> -+ i/2. Any change to the FFT convention must fail here.
  Grid g(1, 64);
  const auto& c = cosine(g, 3).spectrum();
  CHECK(std::abs(c[g.spectral_index(3)] - 0.5) <= 1e-14);
  CHECK(std::abs(c[g.spectral_index(-3)] - 0.5) <= 1e-14);
  const auto& s = sine(g, 3).spectrum();
  CHECK(std::abs(s[g.spectral_index(3)] - std::complex<double>(0.0, -0.5)) <= 1e-14);
  CHECK(std::abs(s[g.spectral_index(-3)] - std::complex<double>(0.0, 0.5)) <= 1e-14);

  Grid g2(2, 16);
  Field f2 = Field::sample(
      g2, [](double x, double y) { return std::cos(2 * x) * std::cos(5 * y); });
  const auto& c2 = f2.spectrum();
  for (int sx : {2, -2}) {
    for (int sy : {5, -5}) {
      CHECK(std::abs(c2[g2.spectral_index(sx, sy)] - 0.25) <= 1e-14);
    }
  }
}

TEST_CASE("Parseval holds to 1e-12") {
  Grid g(1, 128);
  Field f = random_values(g, 3);
  double phys = 0.0;
  for (double v : f.values()) phys += v * v;
  phys /= static_cast<double>(f.size());
  double spec = 0.0;
  for (const auto& c : f.spectrum()) spec += std::norm(c);
  CHECK(std::abs(phys - spec) <= 1e-12 * phys);
}

TEST_CASE("from_spectrum rejects non-Hermitian data") {
  Grid g(1, 64);
  std::vector<std::complex<double>> spec(g.size(), 0.0);
  spec[g.spectral_index(3)] = {0.0, 1.0};  // missing the mirror mode
  CHECK_THROWS_AS(Field::from_spectrum(g, spec), NonHermitianMultiplier);
}

TEST_CASE("multiplier_apply: |D| acts diagonally on cosines") {
  Grid g(1, 64);
  for (int k : {1, 5, 17}) {
    Field out = multiplier_apply(cosine(g, k), mult::abs_xi());
    Field want = cosine(g, k, static_cast<double>(k));
    double m = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) m = std::max(m, std::abs(out[i] - want[i]));
    CHECK(m <= 1e-12 * k);
  }
  // Non-integer length scale: xi = j / L.
  Grid gl(1, 64, 2.0);
  Field out = multiplier_apply(cosine(gl, 6), mult::abs_xi());
  // cos(6x/L) has integer mode 6, wavenumber 3.
  CHECK(l2_norm(out - cosine(gl, 6, 3.0)) <= 1e-12 * 3.0);
}

TEST_CASE("multiplier composition matches the product multiplier to 1e-12") {
  Grid g(1, 64);
  Field f = random_values(g, 11);
  Field two_steps =
      multiplier_apply(multiplier_apply(f, mult::bessel_pow(1.3)), mult::exp_abs(-0.4));
  Field one_step = multiplier_apply(f, [](const std::array<double, 2>& xi) {
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
    return std::complex<double>(
        std::pow(1.0 + r2, 0.65) * std::exp(-0.4 * std::sqrt(r2)), 0.0);
  });
  CHECK(l2_norm(two_steps - one_step) <= 1e-12 * l2_norm(f));
  // Identity composition <D>^s <D>^-s = Id.
  Field id = multiplier_apply(multiplier_apply(f, mult::bessel_pow(2.2)),
                              mult::bessel_pow(-2.2));
  CHECK(l2_norm(id - f) <= 1e-12 * l2_norm(f));
}

TEST_CASE("multiplier_apply rejects non-Hermitian symbols and grid mismatch") {
  Grid g(1, 64);
  Field f = random_values(g, 5);
  CHECK_THROWS_AS(multiplier_apply(f, [](const std::array<double, 2>& xi) {
    return std::complex<double>(xi[0], 0.0);  // odd real symbol
  }), NonHermitianMultiplier);
  std::vector<std::complex<double>> wrong(32, 1.0);
  CHECK_THROWS_AS(multiplier_apply_sampled(f, wrong), GridMismatch);
}

TEST_CASE("spectral derivative and Poisson smoothing closed forms") {
  Grid g(1, 64);
  Field d = deriv(cosine(g, 7), 0);
  CHECK(l2_norm(d - sine(g, 7, -7.0)) <= 1e-12 * 7);
  const double delta = 0.3;
  Field sm = multiplier_apply(cosine(g, 5), mult::exp_abs(-delta));
  CHECK(l2_norm(sm - cosine(g, 5, std::exp(-delta * 5))) <= 1e-12);
}

TEST_CASE("dealias_product matches the spectral convolution oracle") {
  // Inputs band-limited to the 2/3-rule cutoff: the grid product must equal
  // the exact convolution on every retained mode, and carry nothing above.
  Grid g(1, 32);
  const int kc = dealias_cutoff(g);  // 10 for n = 32
  CHECK(kc == 10);
  CounterRng rng(99);
  Field a = rough_field(g, rng, 1, 1.5, 0.5);
  Field b = smooth_random_field(g, rng, 2, 4.0, 0.5);
  REQUIRE(is_band_limited(a));
  REQUIRE(is_band_limited(b));
  auto oracle = testing::convolve_spectra(g, a, b);
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    if (std::abs(g.modes(i)[0]) > kc) oracle[i] = 0.0;
  }
  Field got = dealias_product(a, b);
  CHECK(testing::max_spectral_diff(oracle, got.spectrum()) <= 1e-12);
}

TEST_CASE("dealias_product 2d matches the oracle") {
  Grid g(2, 16);
  const int kc = dealias_cutoff(g);  // 5
  CounterRng rng(12);
  Field a = smooth_random_field(g, rng, 3, 2.0, 0.4);
  Field b = smooth_random_field(g, rng, 4, 3.0, 0.4);
  auto oracle = testing::convolve_spectra(g, a, b);
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    const auto m = g.modes(i);
    if (std::abs(m[0]) > kc || std::abs(m[1]) > kc) oracle[i] = 0.0;
  }
  Field got = dealias_product(a, b);
  CHECK(testing::max_spectral_diff(oracle, got.spectrum()) <= 1e-12);
}

TEST_CASE("dealias boundary: squaring the last retained mode leaves only DC") {
  Grid g(1, 64);
  const int kc = dealias_cutoff(g);  // 21
  CHECK(kc == 21);
  Field f = cosine(g, kc);
  // cos(kc x)^2 = 1/2 + 1/2 cos(2 kc x); the 2 kc mode (42) aliases to -22 on
  // the grid and sits above the cutoff, so exactly the constant half remains.
  Field p = dealias_product(f, f);
  CHECK(std::abs(p.mean() - 0.5) <= 1e-13);
  CHECK(l2_norm(p - Field::constant(g, 0.5)) <= 1e-13);
}

TEST_CASE("cutoff function hits its plateau values exactly") {
  CHECK(lp_kappa(0.0) == 1.0);
  CHECK(lp_kappa(1.0) == 1.0);
  CHECK(lp_kappa(1.1) == 1.0);
  CHECK(lp_kappa(1.9) == 0.0);
  CHECK(lp_kappa(2.0) == 0.0);
  CHECK(lp_kappa(1.5) > 0.0);
  CHECK(lp_kappa(1.5) < 1.0);
  // Monotone on the transition.
  double prev = 1.0;
  for (double t = 1.1; t <= 1.91; t += 0.05) {
    const double v = lp_kappa(t);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("dyadic blocks act as expected on pure cosines") {
  Grid g(1, 64);
  // kappa_3(8) = kappa(1) = 1 and kappa_2(8) = kappa(2) = 0: block 3 passes
  // cos(8x) untouched.
  Field f = cosine(g, 8);
  CHECK(l2_norm(lp_block(f, 3) - f) <= 1e-14);
  CHECK(l2_norm(lp_block(f, 2)) <= 1e-14);
  CHECK(l2_norm(lp_block(f, 4)) <= 1e-14);
  // The lowest block captures cos(x) entirely.
  Field low = cosine(g, 1);
  CHECK(l2_norm(lp_block(low, 0) - low) <= 1e-14);
  for (int k = 1; k <= 4; ++k) CHECK(l2_norm(lp_block(low, k)) <= 1e-14);
}

TEST_CASE("dyadic blocks sum to the identity exactly") {
  for (int dim : {1, 2}) {
    Grid g(dim, dim == 1 ? 128 : 16);
    Field f = random_values(g, 21);
    auto blocks = lp_decompose(f);
    Field sum = Field::zeros(g);
    for (const auto& b : blocks) sum += b;
    CHECK(l2_norm(sum - f) <= 1e-14 * l2_norm(f));
  }
}

TEST_CASE("blocks two octaves apart are exactly disjoint") {
  Grid g(1, 128);
  Field f = random_values(g, 31);
  for (int j = 0; j <= g.lp_block_count(); ++j) {
    for (int k = j + 2; k <= g.lp_block_count(); ++k) {
      Field jj = lp_block(lp_block(f, k), j);
      CHECK(l2_norm(jj) <= 1e-15 * l2_norm(f));
    }
  }
}

TEST_CASE("negative-index lowpass keeps only the mean") {
  Grid g(1, 64);
  Field f = cosine(g, 1) + Field::constant(g, 2.5);
  // kappa_-3(1) = kappa(8) = 0, so S_-3 strips everything but the mean.
  Field low = lp_lowpass(f, -3);
  CHECK(l2_norm(low - Field::constant(g, 2.5)) <= 1e-14);
}

TEST_CASE("sobolev norm closed forms") {
  Grid g(1, 64);
  // ||A cos(kx)||_{H^s}^2 = A^2 (1+k^2)^s / 2.
  for (double s : {0.0, 0.75, 2.0, -1.0}) {
    const double want = 2.0 * std::sqrt(std::pow(1.0 + 25.0, s) / 2.0);
    CHECK(sobolev_norm(cosine(g, 5, 2.0), s) == doctest::Approx(want).epsilon(1e-12));
  }
  // s = 0 golden: the Parseval constant of the chosen normalization.
  CHECK(sobolev_norm(cosine(g, 9), 0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(l2_norm(cosine(g, 9)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("zygmund norm of a dyadic cosine is 2^{qs}") {
  Grid g(1, 128);
  for (int m : {2, 4, 5}) {
    Field f = cosine(g, 1 << m);
    const double s = 0.7;
    CHECK(zygmund_norm(f, s) == doctest::Approx(std::pow(2.0, m * s)).epsilon(1e-10));
  }
}

TEST_CASE("zygmund-sobolev embedding on a seeded ensemble") {
  // ||u||_{C^s_*} <= C ||u||_{H^{s + d/2 + 0.1}}; the constant is frozen from
  // a development run with 20% headroom.
  Grid g(1, 128);
  CounterRng rng(17);
  const double s = 0.8;
  double worst = 0.0;
  for (int i = 0; i < 12; ++i) {
    Field f = rough_field(g, rng, 100 + i, 1.7, 0.3);
    worst = std::max(worst, zygmund_norm(f, s) / sobolev_norm(f, s + 0.6));
  }
  CHECK(worst <= 1.25);
}

TEST_CASE("rough_field is deterministic, band-limited, and scaled") {
  Grid g(1, 128);
  CounterRng rng(42);
  Field a = rough_field(g, rng, 7, 2.6, 0.05);
  Field b = rough_field(g, rng, 7, 2.6, 0.05);
  CHECK(l2_norm(a - b) == 0.0);
  CHECK(is_band_limited(a));
  CHECK(max_slope(a) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(std::abs(a.mean()) <= 1e-15);
  Field c = rough_field(g, rng, 8, 2.6, 0.05);
  CHECK(l2_norm(a - c) > 1e-4);
}

TEST_CASE("rough_field regularity surrogate: H^{s+1/2-} bounded, H^{s+1/2+} grows") {
  // decay 2.6 targets eta in H^{2.1-}. Below the threshold the norm is stable
  // under refinement; above it, it keeps growing with N.
  CounterRng rng(4242);
  Grid g1(1, 128), g2(1, 512);
  Field f1 = rough_field(g1, rng, 1, 2.6, 0.05);
  Field f2 = rough_field(g2, rng, 1, 2.6, 0.05);
  const double below1 = sobolev_norm(f1, 1.9), below2 = sobolev_norm(f2, 1.9);
  CHECK(below2 <= 1.35 * below1);
  const double above1 = sobolev_norm(f1, 2.6), above2 = sobolev_norm(f2, 2.6);
  CHECK(above2 >= 1.5 * above1);
}

TEST_CASE("grid mismatch is rejected in arithmetic") {
  Grid a(1, 64), b(1, 128);
  Field fa = Field::zeros(a), fb = Field::zeros(b);
  CHECK_THROWS_AS(fa + fb, GridMismatch);
  CHECK_THROWS_AS(pointwise_product(fa, fb), GridMismatch);
}
