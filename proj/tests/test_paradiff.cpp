#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "parawave/errors.hpp"
#include "parawave/field.hpp"
#include "parawave/format.hpp"
#include "parawave/lp.hpp"
#include "parawave/multiplier.hpp"
#include "parawave/norms.hpp"
#include "parawave/order_fit.hpp"
#include "parawave/parabolic.hpp"
#include "parawave/paradiff.hpp"
#include "parawave/products.hpp"
#include "parawave/random_fields.hpp"
#include "test_support.hpp"

using namespace parawave;
using testing::random_values;

namespace {

Field cosine(const Grid& g, int k, double amp = 1.0) {
  return Field::sample(
      g, [&](double x, double) { return amp * std::cos(k * x / g.length_scale()); });
}

double ip(const Field& a, const Field& b) {
  return pointwise_product(a, b).mean();
}

SymbolProfile abs_prof() {
  return [](const std::array<double, 2>& xi) {
    return std::complex<double>(std::hypot(xi[0], xi[1]), 0.0);
  };
}

// i*xi_1 with the Nyquist column zeroed so the profile stays Hermitian on
// the discrete lattice.
SymbolProfile odd_prof(const Grid& g) {
  const double nyq = (g.n() / 2) / g.length_scale();
  return [nyq](const std::array<double, 2>& xi) {
    if (std::abs(xi[0]) >= nyq) return std::complex<double>(0.0, 0.0);
    return std::complex<double>(0.0, xi[0]);
  };
}

// Reference quantization: per-block multiplier application and low-passed
// coefficient, assembled with the public spectral primitives.
Field naive_quantization(const Field& c, const SymbolProfile& prof,
                         const Field& u) {
  Field acc = Field::zeros(u.grid());
  for (int j = 0; j <= u.grid().lp_block_count(); ++j) {
    acc += pointwise_product(lp_lowpass(c, j - 3),
                             multiplier_apply(lp_block(u, j), prof));
  }
  return acc;
}

}  // namespace

TEST_CASE("paraproduct matches the per-block low-pass oracle") {
  CounterRng rng(2024);
  const Grid g1(1, 128);
  const Field a1 = Field::constant(g1, 1.0) + smooth_random_field(g1, rng, 1, 6.0, 0.4);
  const Field u1 = random_values(g1, 77);
  const auto one = [](const std::array<double, 2>&) {
    return std::complex<double>(1.0, 0.0);
  };
  CHECK(linf_norm(paraproduct(a1, u1) - naive_quantization(a1, one, u1)) < 1e-12);

  const Grid g2(2, 32);
  const Field a2 = smooth_random_field(g2, rng, 2, 4.0, 0.5);
  const Field u2 = random_values(g2, 78);
  CHECK(linf_norm(paraproduct(a2, u2) - naive_quantization(a2, one, u2)) < 1e-12);
}

TEST_CASE("separable quantization matches the oracle for order-one profiles") {
  CounterRng rng(11);
  const Grid g(1, 128);
  const Field c = Field::constant(g, 0.5) + smooth_random_field(g, rng, 3, 5.0, 0.3);
  const Field u = random_values(g, 5);

  for (const SymbolProfile& prof : {abs_prof(), odd_prof(g)}) {
    std::vector<SymbolTerm> terms;
    terms.push_back({c, prof});
    const auto p = SymbolRep::separable(g, std::move(terms), 1.0, 2.0);
    CHECK(linf_norm(paradiff_apply(p, u) - naive_quantization(c, prof, u)) < 1e-11);
  }
}

TEST_CASE("unit symbol acts as the identity") {
  const Grid g(1, 128);
  const Field u = random_values(g, 9);
  CHECK(linf_norm(paraproduct(Field::constant(g, 1.0), u) - u) < 1e-13);

  const Grid gs(1, 64);
  const Field us = random_values(gs, 10);
  const auto p = SymbolRep::pointwise(
      gs,
      [](std::size_t, const std::array<double, 2>&) {
        return std::complex<double>(1.0, 0.0);
      },
      0.0, 0.0);
  CHECK(linf_norm(paradiff_apply(p, us) - us) < 1e-13);
}

TEST_CASE("high-low interaction multiplies exactly, low-high vanishes") {
  const Grid g(1, 256);
  const Field a = cosine(g, 1);
  const Field u = cosine(g, 32);
  CHECK(linf_norm(paraproduct(a, u) - pointwise_product(a, u)) < 1e-13);
  CHECK(linf_norm(paraproduct(u, a)) < 1e-15);
}

TEST_CASE("paraproducts and remainder reconstruct the dealiased product") {
  CounterRng rng(31);
  const Grid g(1, 128);
  const Field a = smooth_random_field(g, rng, 4, 8.0, 0.7);
  const Field u = smooth_random_field(g, rng, 5, 12.0, 0.9);
  const Field rebuilt =
      paraproduct(a, u) + paraproduct(u, a) + bony_remainder(a, u);
  CHECK(linf_norm(rebuilt - dealias_product(a, u)) < 1e-12);
}

TEST_CASE("x-independent symbols reduce to plain multipliers") {
  const Grid g(1, 128);
  const Field u = random_values(g, 13);

  const auto habs = SymbolRep::multiplier(g, abs_prof(), 1.0);
  const Field viaop = paradiff_apply(habs, u);
  const Field direct = multiplier_apply(u, mult::abs_xi());
  CHECK(l2_norm(viaop - direct) < 1e-12 * l2_norm(direct));

  // Singular at the origin: the quantization drops the mean mode.
  const auto hroot = SymbolRep::multiplier(
      g,
      [](const std::array<double, 2>& xi) {
        return std::complex<double>(1.0 / std::sqrt(std::hypot(xi[0], xi[1])), 0.0);
      },
      -0.5);
  const Field udirect = multiplier_apply(u, [](const std::array<double, 2>& xi) {
    const double r = std::hypot(xi[0], xi[1]);
    return std::complex<double>(r == 0.0 ? 0.0 : 1.0 / std::sqrt(r), 0.0);
  });
  CHECK(l2_norm(paradiff_apply(hroot, u) - udirect) < 1e-12 * l2_norm(udirect));

  // Same reduction through the dense pointwise path.
  const Grid gs(1, 64);
  const Field us = random_values(gs, 14);
  const auto pdense = SymbolRep::pointwise(
      gs,
      [](std::size_t, const std::array<double, 2>& xi) {
        return std::complex<double>(std::hypot(xi[0], xi[1]), 0.0);
      },
      1.0, 1e9);
  const Field dd = multiplier_apply(us, mult::abs_xi());
  CHECK(l2_norm(paradiff_apply(pdense, us) - dd) < 1e-12 * l2_norm(dd));
}

TEST_CASE("separable and dense paths agree on a mixed symbol") {
  CounterRng rng(41);
  const Grid g(1, 64);
  const Field c0 = Field::constant(g, 1.0) + smooth_random_field(g, rng, 6, 4.0, 0.4);
  const Field c1 = smooth_random_field(g, rng, 7, 3.0, 0.2);
  const auto prof0 = abs_prof();
  const auto prof1 = odd_prof(g);

  std::vector<SymbolTerm> terms;
  terms.push_back({c0, prof0});
  terms.push_back({c1, prof1});
  const auto sep = SymbolRep::separable(g, std::move(terms), 1.0, 2.0);
  const auto dense = SymbolRep::pointwise(
      g,
      [c0, c1, prof0, prof1](std::size_t ix, const std::array<double, 2>& xi) {
        return c0[ix] * prof0(xi) + c1[ix] * prof1(xi);
      },
      1.0, 2.0);

  const Field u = random_values(g, 15);
  const double scale = linf_norm(paradiff_apply(sep, u));
  CHECK(linf_norm(paradiff_apply(sep, u) - paradiff_apply(dense, u)) <
        1e-10 * scale);
  CHECK(linf_norm(paradiff_adjoint_apply(sep, u) -
                  paradiff_adjoint_apply(dense, u)) < 1e-10 * scale);
}

TEST_CASE("adjoint pairs with the forward operator") {
  CounterRng rng(51);
  const Grid g(1, 128);
  const Field c = Field::constant(g, 1.0) + smooth_random_field(g, rng, 8, 5.0, 0.3);
  std::vector<SymbolTerm> terms;
  terms.push_back({c, abs_prof()});
  terms.push_back({0.5 * c, odd_prof(g)});
  const auto p = SymbolRep::separable(g, std::move(terms), 1.0, 2.0);

  const Field u = random_values(g, 16);
  const Field v = random_values(g, 17);
  const double lhs = ip(paradiff_apply(p, u), v);
  const double rhs = ip(u, paradiff_adjoint_apply(p, v));
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(std::abs(lhs), 1.0));

  const Grid gs(1, 64);
  const auto pd = SymbolRep::pointwise(
      gs,
      [&gs](std::size_t ix, const std::array<double, 2>& xi) {
        const double x = gs.point(ix)[0];
        return (1.0 + 0.4 * std::cos(x)) * std::hypot(xi[0], xi[1]) +
               std::complex<double>(0.0, 0.2 * std::sin(x) * xi[0] /
                                             std::sqrt(1.0 + xi[0] * xi[0]));
      },
      1.0, 2.0);
  const Field ud = random_values(gs, 18);
  const Field vd = random_values(gs, 19);
  const double lhsd = ip(paradiff_apply(pd, ud), vd);
  const double rhsd = ip(ud, paradiff_adjoint_apply(pd, vd));
  CHECK(std::abs(lhsd - rhsd) < 1e-12 * std::max(std::abs(lhsd), 1.0));
}

TEST_CASE("symbol validation") {
  const Grid g(1, 64);
  const Field u = random_values(g, 20);
  CHECK_THROWS_AS(paradiff_apply(SymbolRep(), u), SymbolUndefined);

  // Profile singular away from the origin.
  const auto bad = SymbolRep::multiplier(
      g,
      [](const std::array<double, 2>& xi) {
        const double r = std::hypot(xi[0], xi[1]);
        return std::complex<double>(r > 3.0 ? std::nan("") : r, 0.0);
      },
      1.0);
  CHECK_THROWS_AS(paradiff_apply(bad, u), SymbolUndefined);

  // Real odd profile violates the reality condition.
  const auto odd = SymbolRep::multiplier(
      g,
      [](const std::array<double, 2>& xi) {
        return std::complex<double>(xi[0], 0.0);
      },
      1.0);
  CHECK_THROWS_AS(paradiff_apply(odd, u), NonHermitianMultiplier);

  // Pointwise-only symbols refuse large grids.
  const Grid big(1, 2048);
  const auto pbig = SymbolRep::pointwise(
      big,
      [](std::size_t, const std::array<double, 2>&) {
        return std::complex<double>(1.0, 0.0);
      },
      0.0, 0.0);
  CHECK_THROWS_AS(paradiff_apply(pbig, random_values(big, 21)), Error);

  // Cross-check of dual representations.
  std::vector<SymbolTerm> terms;
  terms.push_back({Field::constant(g, 1.0), abs_prof()});
  const auto sep = SymbolRep::separable(g, std::move(terms), 1.0, 2.0);
  CHECK_THROWS_AS(sep.with_pointwise([](std::size_t,
                                        const std::array<double, 2>& xi) {
                    return std::complex<double>(2.0 * std::hypot(xi[0], xi[1]), 0.0);
                  }),
                  Error);
}

TEST_CASE("order fit recovers an exact power law") {
  const Grid g(1, 128);
  auto op = [](const Field& f) { return -1.0 * laplacian(f); };
  const auto ks = probe_frequencies(g, 4, 32, 4);
  const auto rep = fit_operator_order(op, g, ks);
  CHECK(rep.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.residual < 1e-12);
  CHECK(rep.slope_stderr < 1e-12);
  CHECK(!rep.exact_zero);

  const auto zrep =
      fit_operator_order([](const Field& f) { return Field::zeros(f.grid()); },
                         g, ks);
  CHECK(zrep.exact_zero);
}

TEST_CASE("probe generation validates its range") {
  const Grid g(1, 128);
  const auto ks = probe_frequencies(g, 8, 63, 6);
  CHECK(ks.front() == 8);
  CHECK(ks.back() == 63);
  for (std::size_t i = 1; i < ks.size(); ++i) CHECK(ks[i] > ks[i - 1]);
  CHECK_THROWS_AS(probe_frequencies(g, 8, 64, 6), Error);
  CHECK_THROWS_AS(probe_frequencies(g, 8, 9, 5), Error);
  CHECK(std::abs(l2_norm(probe_wave(g, 7)) - 1.0) < 1e-14);
}

TEST_CASE("composition error fits below the calculus order") {
  const Grid g(1, 256);
  const Field ca = Field::sample(
      g, [](double x, double) { return 1.0 + 0.3 * std::cos(x); });
  const Field cb = Field::sample(
      g, [](double x, double) { return 1.0 + 0.3 * std::sin(x); });
  std::vector<SymbolTerm> ta, tb;
  ta.push_back({ca, abs_prof()});
  tb.push_back({cb, abs_prof()});
  const auto a = SymbolRep::separable(g, std::move(ta), 1.0, 2.0);
  const auto b = SymbolRep::separable(g, std::move(tb), 1.0, 2.0);

  const auto ks = probe_frequencies(g, 8, 64, 6);
  const auto rep = compose_error_fit(a, b, ks);
  CHECK(!rep.exact_zero);
  CHECK(rep.slope <= 1.2);  // orders add to 2; one derivative is gained

  // Multiplier symbols compose exactly.
  const auto ma = SymbolRep::multiplier(
      g,
      [](const std::array<double, 2>& xi) {
        return std::complex<double>(std::sqrt(std::hypot(xi[0], xi[1])), 0.0);
      },
      0.5);
  const auto mb = SymbolRep::multiplier(
      g,
      [](const std::array<double, 2>& xi) {
        return std::complex<double>(std::pow(1.0 + xi[0] * xi[0] + xi[1] * xi[1], 0.25), 0.0);
      },
      0.5);
  CHECK(compose_error_fit(ma, mb, ks).exact_zero);
}

TEST_CASE("adjoint error fits below the calculus order") {
  const Grid g(1, 256);
  const Field ca = Field::sample(
      g, [](double x, double) { return 1.0 + 0.3 * std::cos(x); });
  std::vector<SymbolTerm> ta;
  ta.push_back({ca, abs_prof()});
  const auto a = SymbolRep::separable(g, std::move(ta), 1.0, 2.0);
  const auto ks = probe_frequencies(g, 8, 64, 6);
  const auto rep = adjoint_error_fit(a, ks);
  CHECK(!rep.exact_zero);
  CHECK(rep.slope <= 0.2);  // real symbol: adjoint defect loses one order

  const auto ma = SymbolRep::multiplier(g, abs_prof(), 1.0);
  CHECK(adjoint_error_fit(ma, ks).exact_zero);
}

TEST_CASE("boundedness probe stays flat for an order-one symbol") {
  const Grid g(1, 256);
  const Field ca = Field::sample(
      g, [](double x, double) { return 1.0 + 0.3 * std::cos(x); });
  std::vector<SymbolTerm> ta;
  ta.push_back({ca, [](const std::array<double, 2>& xi) {
                  return std::complex<double>(
                      std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1]), 0.0);
                }});
  const auto a = SymbolRep::separable(g, std::move(ta), 1.0, 2.0);
  const auto rep = boundedness_probe(a, 2.0, probe_frequencies(g, 8, 64, 6));
  CHECK(rep.slope <= 0.1);
  for (double r : rep.response_norms) {
    CHECK(r > 0.5);
    CHECK(r < 2.0);
  }
}

TEST_CASE("commutator probe matches the two-mode closed form") {
  const Grid g(1, 128);
  const Field V = cosine(g, 1);
  const double sigma = 1.5;
  const auto ks = probe_frequencies(g, 4, 32, 4);
  const auto rep = commutator_norm_probe(V, sigma, ks);
  auto bes = [sigma](double k) { return std::pow(1.0 + k * k, sigma / 2); };
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double k = ks[i];
    const double up = bes(k + 1) - bes(k);
    const double dn = bes(k - 1) - bes(k);
    const double expected = 0.5 * std::sqrt(up * up + dn * dn);
    CHECK(rep.response_norms[i] == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(rep.slope > 0.4);  // ~sigma - 1 for a smooth coefficient
  CHECK(rep.slope < 0.6);
}

TEST_CASE("order fit report serializes to json") {
  const Grid g(1, 128);
  const auto rep = fit_operator_order(
      [](const Field& f) { return -1.0 * laplacian(f); }, g,
      probe_frequencies(g, 4, 32, 4));
  const auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j["slope"].get<double>() == doctest::Approx(rep.slope).epsilon(1e-15));
  CHECK(j["probes"].size() == rep.probe_frequencies.size());
  CHECK(j["norms"].size() == rep.response_norms.size());
  CHECK(j["exact_zero"].get<bool>() == false);
}

TEST_CASE("doubles format to shortest round-trip form") {
  for (double v : {0.1, 1.0 / 3.0, 1.0, -2.5e300, 7e-17, 12345.0, 0.0}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("constant-coefficient smoothing is exact") {
  CounterRng rng(61);
  const Grid g(1, 128);
  const Field w0 =
      Field::constant(g, 2.0) + smooth_random_field(g, rng, 9, 10.0, 0.8);
  const auto p = SymbolRep::multiplier(g, abs_prof(), 1.0);
  const int nz = 16;
  const auto levels = parabolic_evolve(p, w0, nullptr, 0.0, 1.0, nz);
  REQUIRE(levels.size() == static_cast<std::size_t>(nz + 1));
  CHECK(linf_norm(levels[0] - w0) == 0.0);
  for (int j = 1; j <= nz; ++j) {
    const double z = static_cast<double>(j) / nz;
    const Field exact = multiplier_apply(w0, mult::exp_abs(-z));
    CHECK(linf_norm(levels[j] - exact) < 1e-12 * linf_norm(w0));
  }
  CHECK(levels.back().mean() == doctest::Approx(w0.mean()).epsilon(1e-13));
}

TEST_CASE("semigroup decay at acceptance resolution") {
  const Grid g(1, 128);
  const Field w0 = cosine(g, 8);
  const auto p = SymbolRep::multiplier(g, abs_prof(), 1.0);
  const auto levels = parabolic_evolve(p, w0, nullptr, 0.0, 1.0, 64);
  const Field exact = std::exp(-8.0) * w0;
  CHECK(l2_norm(levels.back() - exact) < 1e-10 * l2_norm(exact));
}

TEST_CASE("forced march converges at first order to the Duhamel solution") {
  const Grid g(1, 64);
  const Field w0 = cosine(g, 3);
  const auto p = SymbolRep::multiplier(g, abs_prof(), 1.0);
  auto forcing = [&g](double z) {
    return Field::sample(g, [z](double x, double) {
      return std::exp(-z) * std::cos(3.0 * x);
    });
  };
  // dw/dz + 3w = e^{-z} on the k=3 mode: w(1) = e^{-3} + (e^{-1}-e^{-3})/2.
  const double amp = std::exp(-3.0) + 0.5 * (std::exp(-1.0) - std::exp(-3.0));
  const Field exact = cosine(g, 3, amp);
  std::vector<double> errs;
  for (int nz : {16, 32, 64}) {
    errs.push_back(
        l2_norm(parabolic_evolve(p, w0, forcing, 0.0, 1.0, nz).back() - exact));
  }
  CHECK(errs[0] / errs[1] == doctest::Approx(2.0).epsilon(0.15));
  CHECK(errs[1] / errs[2] == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("variable-coefficient march refines at first order") {
  CounterRng rng(71);
  const Grid g(1, 64);
  const Field c = Field::sample(
      g, [](double x, double) { return 1.0 + 0.3 * std::cos(x); });
  std::vector<SymbolTerm> terms;
  terms.push_back({c, abs_prof()});
  const auto p = SymbolRep::separable(g, std::move(terms), 1.0, 2.0);
  const Field w0 = smooth_random_field(g, rng, 10, 5.0, 0.5);

  const Field ref = parabolic_evolve(p, w0, nullptr, 0.0, 0.5, 512).back();
  const double e32 = l2_norm(parabolic_evolve(p, w0, nullptr, 0.0, 0.5, 32).back() - ref);
  const double e64 = l2_norm(parabolic_evolve(p, w0, nullptr, 0.0, 0.5, 64).back() - ref);
  CHECK(e64 < e32);
  CHECK(e32 / e64 >= 1.7);
}

TEST_CASE("parabolic marcher rejects bad problems") {
  const Grid g(1, 64);
  const Field w0 = cosine(g, 2);
  const auto neg = SymbolRep::multiplier(
      g,
      [](const std::array<double, 2>& xi) {
        return std::complex<double>(-std::hypot(xi[0], xi[1]), 0.0);
      },
      1.0);
  CHECK_THROWS_AS(parabolic_evolve(neg, w0, nullptr, 0.0, 1.0, 8),
                  EllipticityViolation);

  std::vector<SymbolTerm> terms;
  terms.push_back({cosine(g, 1), abs_prof()});
  const auto signchange = SymbolRep::separable(g, std::move(terms), 1.0, 2.0);
  CHECK_THROWS_AS(parabolic_evolve(signchange, w0, nullptr, 0.0, 1.0, 8),
                  EllipticityViolation);

  const auto p = SymbolRep::multiplier(g, abs_prof(), 1.0);
  CHECK_THROWS_AS(parabolic_evolve(SymbolRep(), w0, nullptr, 0.0, 1.0, 8),
                  SymbolUndefined);
  CHECK_THROWS_AS(parabolic_evolve(p, w0, nullptr, 0.0, 1.0, 0), Error);
  CHECK_THROWS_AS(parabolic_evolve(p, w0, nullptr, 1.0, 1.0, 8), Error);
}

TEST_CASE("heat-like decay is monotone in smoother norms") {
  CounterRng rng(81);
  const Grid g(1, 128);
  const Field w0 = smooth_random_field(g, rng, 11, 12.0, 0.8);
  const auto p = SymbolRep::multiplier(
      g,
      [](const std::array<double, 2>& xi) {
        return std::complex<double>(xi[0] * xi[0] + xi[1] * xi[1], 0.0);
      },
      2.0);
  const auto levels = parabolic_evolve(p, w0, nullptr, 0.0, 0.2, 16);
  for (std::size_t j = 1; j < levels.size(); ++j) {
    CHECK(sobolev_norm(levels[j], 1.0) < sobolev_norm(levels[j - 1], 1.0) + 1e-14);
  }
}
