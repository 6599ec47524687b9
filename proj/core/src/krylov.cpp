#include "parawave/krylov.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "parawave/errors.hpp"

namespace parawave {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(std::vector<double>& y, double c, const std::vector<double>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

}  // namespace

KrylovResult gmres(const LinearMap& apply, const LinearMap& precondition,
                   const std::vector<double>& b, const SolverOptions& opts) {
  if (opts.restart < 1 || opts.max_iter < 1 || opts.tol <= 0.0) {
    throw Error("gmres: invalid solver options");
  }
  const std::size_t n = b.size();
  KrylovResult res;
  res.x.assign(n, 0.0);
  const double bnorm = norm(b);
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }

  std::vector<double> r = b;
  double rnorm = bnorm;
  while (res.iterations < opts.max_iter) {
    const int m = std::min(opts.restart, opts.max_iter - res.iterations);
    std::vector<std::vector<double>> basis;   // orthonormal residual space
    std::vector<std::vector<double>> search;  // preconditioned directions
    basis.reserve(m + 1);
    search.reserve(m);
    std::vector<double> v0 = r;
    for (double& vi : v0) vi /= rnorm;
    basis.push_back(std::move(v0));

    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m + 1, m);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m + 1);
    g(0) = rnorm;
    std::vector<double> cs(m), sn(m);
    int k = 0;
    bool breakdown = false;
    for (; k < m; ++k) {
      search.push_back(precondition ? precondition(basis[k]) : basis[k]);
      std::vector<double> w = apply(search[k]);
      for (int i = 0; i <= k; ++i) {
        hess(i, k) = dot(w, basis[i]);
        axpy(w, -hess(i, k), basis[i]);
      }
      hess(k + 1, k) = norm(w);
      ++res.iterations;

      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * hess(i, k) + sn[i] * hess(i + 1, k);
        hess(i + 1, k) = -sn[i] * hess(i, k) + cs[i] * hess(i + 1, k);
        hess(i, k) = t;
      }
      const double denom = std::hypot(hess(k, k), hess(k + 1, k));
      if (denom == 0.0) {  // column annihilated: subspace is invariant
        breakdown = true;
        ++k;
        break;
      }
      cs[k] = hess(k, k) / denom;
      sn[k] = hess(k + 1, k) / denom;
      hess(k, k) = denom;
      g(k + 1) = -sn[k] * g(k);
      g(k) *= cs[k];
      res.history.push_back(std::abs(g(k + 1)) / bnorm);

      if (res.history.back() < opts.tol) {
        ++k;
        break;
      }
      if (hess(k + 1, k) < 1e-14 * bnorm) {  // lucky breakdown
        breakdown = true;
        ++k;
        break;
      }
      std::vector<double> vnext = w;
      for (double& vi : vnext) vi /= hess(k + 1, k);
      basis.push_back(std::move(vnext));
    }

    if (k > 0) {
      const Eigen::VectorXd y = hess.topLeftCorner(k, k)
                                    .triangularView<Eigen::Upper>()
                                    .solve(g.head(k));
      for (int i = 0; i < k; ++i) axpy(res.x, y(i), search[i]);
    }
    const std::vector<double> ax = apply(res.x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ax[i];
    rnorm = norm(r);
    res.rel_residual = rnorm / bnorm;
    if (res.rel_residual < opts.tol) {
      res.converged = true;
      break;
    }
    if (breakdown) break;  // invariant subspace reached without convergence
  }
  return res;
}

}  // namespace parawave
