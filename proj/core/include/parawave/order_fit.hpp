#pragma once

#include <functional>
#include <string>
#include <vector>

#include "parawave/field.hpp"
#include "parawave/symbol.hpp"

namespace parawave {

// Log-log fit of operator response against probe frequency. Responses are
// L2 norms of the operator applied to unit-normalized cosine probes; the
// slope estimates the operator's order. When every response is at the
// numerical floor the fit is meaningless and exact_zero is set instead.
struct OrderFitReport {
  std::vector<double> probe_frequencies;
  std::vector<double> response_norms;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double residual = 0.0;  // rms residual in log2 coordinates
  bool exact_zero = false;

  std::string to_json() const;
};

// Strictly increasing integer frequencies, approximately log-spaced in
// [kmin, kmax]. Requires kmax <= n/2 - 1 and returns at least 3 entries.
std::vector<int> probe_frequencies(const Grid& grid, int kmin, int kmax,
                                   int count);

// sqrt(2) cos(k x1 / L): unit L2 norm probe at integer mode k.
Field probe_wave(const Grid& grid, int k);

// Generic harness: applies op to each probe and fits the response norms.
OrderFitReport fit_operator_order(const std::function<Field(const Field&)>& op,
                                  const Grid& grid,
                                  const std::vector<int>& frequencies);

// || (T_a T_b - T_ab) e_k ||: expected slope <= order(a)+order(b)-rho+0.2.
OrderFitReport compose_error_fit(const SymbolRep& a, const SymbolRep& b,
                                 const std::vector<int>& frequencies);

// || ((T_a)^* - T_conj(a)) e_k ||: expected slope <= order(a)-rho+0.2.
OrderFitReport adjoint_error_fit(const SymbolRep& a,
                                 const std::vector<int>& frequencies);

// Ratios ||T_a e_k||_{H^{mu-m}} / ||e_k||_{H^mu}: boundedness surrogate,
// expected slope <= 0.1.
OrderFitReport boundedness_probe(const SymbolRep& a, double mu,
                                 const std::vector<int>& frequencies);

// || [<D>^sigma, V] e_k ||_{L2}: expected slope <= sigma - 1/2 + 0.2.
OrderFitReport commutator_norm_probe(const Field& V, double sigma,
                                     const std::vector<int>& frequencies);

}  // namespace parawave
