#include "parawave/order_fit.hpp"

#include <cmath>
#include <sstream>

#include "parawave/errors.hpp"
#include "parawave/format.hpp"
#include "parawave/multiplier.hpp"
#include "parawave/norms.hpp"
#include "parawave/paradiff.hpp"

namespace parawave {

namespace {

void fit_loglog(OrderFitReport& r) {
  const std::size_t n = r.response_norms.size();
  double floor_scale = 0.0;
  for (double v : r.response_norms) floor_scale = std::max(floor_scale, v);
  if (floor_scale <= 1e-12) {
    r.exact_zero = true;
    r.slope = 0.0;
    r.slope_stderr = 0.0;
    r.residual = 0.0;
    return;
  }
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::log2(r.probe_frequencies[i]);
    y[i] = std::log2(std::max(r.response_norms[i], 1e-300));
  }
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= n;
  ym /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  r.slope = sxy / sxx;
  const double intercept = ym - r.slope * xm;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (intercept + r.slope * x[i]);
    ss += e * e;
  }
  r.residual = std::sqrt(ss / n);
  r.slope_stderr = n > 2 ? std::sqrt(ss / (n - 2) / sxx) : 0.0;
}

}  // namespace

std::string OrderFitReport::to_json() const {
  std::ostringstream os;
  os << "{\"probes\":[";
  for (std::size_t i = 0; i < probe_frequencies.size(); ++i) {
    os << (i ? "," : "") << format_double(probe_frequencies[i]);
  }
  os << "],\"norms\":[";
  for (std::size_t i = 0; i < response_norms.size(); ++i) {
    os << (i ? "," : "") << format_double(response_norms[i]);
  }
  os << "],\"slope\":" << format_double(slope)
     << ",\"slope_stderr\":" << format_double(slope_stderr)
     << ",\"residual\":" << format_double(residual)
     << ",\"exact_zero\":" << (exact_zero ? "true" : "false") << "}";
  return os.str();
}

std::vector<int> probe_frequencies(const Grid& grid, int kmin, int kmax,
                                   int count) {
  if (kmin < 1 || kmax <= kmin || kmax > grid.n() / 2 - 1) {
    throw Error("probe_frequencies: need 1 <= kmin < kmax <= n/2 - 1");
  }
  std::vector<int> ks;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    const int k = static_cast<int>(
        std::lround(kmin * std::pow(static_cast<double>(kmax) / kmin, t)));
    if (ks.empty() || k > ks.back()) ks.push_back(k);
  }
  if (ks.size() < 3) throw Error("probe_frequencies: fewer than 3 distinct probes");
  return ks;
}

Field probe_wave(const Grid& grid, int k) {
  const double L = grid.length_scale();
  return Field::sample(grid, [k, L](double x, double) {
    return std::sqrt(2.0) * std::cos(k * x / L);
  });
}

OrderFitReport fit_operator_order(const std::function<Field(const Field&)>& op,
                                  const Grid& grid,
                                  const std::vector<int>& frequencies) {
  if (frequencies.size() < 3) {
    throw Error("fit_operator_order: need at least 3 probe frequencies");
  }
  OrderFitReport r;
  for (std::size_t i = 1; i < frequencies.size(); ++i) {
    if (frequencies[i] <= frequencies[i - 1]) {
      throw Error("fit_operator_order: frequencies must be strictly increasing");
    }
  }
  for (int k : frequencies) {
    r.probe_frequencies.push_back(static_cast<double>(k) / grid.length_scale());
    r.response_norms.push_back(l2_norm(op(probe_wave(grid, k))));
  }
  fit_loglog(r);
  return r;
}

OrderFitReport compose_error_fit(const SymbolRep& a, const SymbolRep& b,
                                 const std::vector<int>& frequencies) {
  const SymbolRep ab = symbol_product(a, b);
  auto op = [&](const Field& u) {
    return paradiff_apply(a, paradiff_apply(b, u)) - paradiff_apply(ab, u);
  };
  return fit_operator_order(op, a.grid(), frequencies);
}

OrderFitReport adjoint_error_fit(const SymbolRep& a,
                                 const std::vector<int>& frequencies) {
  const SymbolRep abar = a.conjugate();
  auto op = [&](const Field& u) {
    return paradiff_adjoint_apply(a, u) - paradiff_apply(abar, u);
  };
  return fit_operator_order(op, a.grid(), frequencies);
}

OrderFitReport boundedness_probe(const SymbolRep& a, double mu,
                                 const std::vector<int>& frequencies) {
  OrderFitReport r;
  const Grid& g = a.grid();
  for (int k : frequencies) {
    const Field e = probe_wave(g, k);
    r.probe_frequencies.push_back(static_cast<double>(k) / g.length_scale());
    r.response_norms.push_back(sobolev_norm(paradiff_apply(a, e), mu - a.order()) /
                               sobolev_norm(e, mu));
  }
  fit_loglog(r);
  return r;
}

OrderFitReport commutator_norm_probe(const Field& V, double sigma,
                                     const std::vector<int>& frequencies) {
  const auto bessel = mult::bessel_pow(sigma);
  auto op = [&](const Field& u) {
    return multiplier_apply(pointwise_product(V, u), bessel) -
           pointwise_product(V, multiplier_apply(u, bessel));
  };
  return fit_operator_order(op, V.grid(), frequencies);
}

}  // namespace parawave
