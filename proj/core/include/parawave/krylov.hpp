#pragma once

#include <functional>
#include <vector>

namespace parawave {

struct SolverOptions {
  double tol = 1e-10;  // relative residual target
  int max_iter = 400;
  int restart = 60;
  bool allow_dense_fallback = true;  // direct solve when the iteration stalls
};

struct KrylovResult {
  std::vector<double> x;
  double rel_residual = 0.0;
  int iterations = 0;
  std::vector<double> history;  // relative residual estimate per iteration
  bool converged = false;
};

using LinearMap = std::function<std::vector<double>(const std::vector<double>&)>;

// Restarted GMRES with right preconditioning (flexible variant: the
// preconditioned directions are stored, so the preconditioner need not be a
// fixed linear operator). precondition may be null. Returns the best iterate
// with an explicitly recomputed residual; callers decide how to handle
// non-convergence.
KrylovResult gmres(const LinearMap& apply, const LinearMap& precondition,
                   const std::vector<double>& b, const SolverOptions& opts);

}  // namespace parawave
