#include "parawave/elliptic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "parawave/errors.hpp"
#include "parawave/fft.hpp"
#include "parawave/format.hpp"
#include "parawave/multiplier.hpp"
#include "parawave/norms.hpp"

namespace parawave {

namespace {

using RowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr std::size_t kDenseFallbackLimit = 4096;

// Discretized strip operator and its per-mode preconditioner. Unknowns are
// stacked level-major: entry j * nx + i is level j at grid point i.
struct StripContext {
  const FlattenedDomain& dom;
  EllipticCoefficients co;
  int levels;
  std::size_t nx;
  bool twod;
  std::vector<std::complex<double>> dx, dy;  // i xi (Nyquist rows zeroed)
  std::vector<double> lap;                   // -|xi|^2
  std::vector<double> bot1, bot2x, bot2y;    // mapped Neumann coefficients
  std::vector<double> row_scale;             // per-level equilibration
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> lus;

  explicit StripContext(const FlattenedDomain& d)
      : dom(d),
        co(elliptic_coefficients(d)),
        levels(d.cheb.count()),
        nx(d.grid.size()),
        twod(d.grid.dim() == 2) {
    const Grid& g = dom.grid;
    dx.resize(nx);
    dy.assign(nx, 0.0);
    lap.resize(nx);
    for (std::size_t s = 0; s < nx; ++s) {
      const auto m = g.modes(s);
      const auto xi = g.wavenumber(s);
      dx[s] = (m[0] == -g.n() / 2)
                  ? 0.0
                  : std::complex<double>(0.0, xi[0]);
      if (twod) {
        dy[s] = (m[1] == -g.n() / 2) ? 0.0 : std::complex<double>(0.0, xi[1]);
      }
      lap[s] = -(xi[0] * xi[0] + xi[1] * xi[1]);
    }
    {
      // Mapped conormal row at z=-1. For a flat bottom it expresses the
      // physical no-flux condition; for the truncated bottomless strip it
      // imposes zero flux on the fluctuation, which is exact for the mean
      // mode (constants extend harmonically with no flux) and exponentially
      // accurate for the rest.
      const int b = levels - 1;
      bot1.resize(nx);
      bot2x.resize(nx);
      bot2y.assign(nx, 0.0);
      for (std::size_t i = 0; i < nx; ++i) {
        double grad2 = dom.rho_x[b][i] * dom.rho_x[b][i];
        if (twod) grad2 += dom.rho_y[b][i] * dom.rho_y[b][i];
        bot1[i] = 1.0 + grad2;
        bot2x[i] = dom.rho_z[b][i] * dom.rho_x[b][i];
        if (twod) bot2y[i] = dom.rho_z[b][i] * dom.rho_y[b][i];
      }
    }

    // Interior rows carry collocation second derivatives whose magnitude
    // grows like levels^4 while the boundary rows stay O(1). Equilibrating
    // by a row-magnitude bound keeps the iteration's residual meaningful at
    // high vertical resolution instead of stalling on roundoff.
    double xi_max = 0.0, xi2_max = 0.0;
    for (std::size_t s = 0; s < nx; ++s) {
      xi2_max = std::max(xi2_max, -lap[s]);
      xi_max = std::max(xi_max, std::abs(dx[s].imag()));
      if (twod) xi_max = std::max(xi_max, std::abs(dy[s].imag()));
    }
    row_scale.assign(levels, 1.0);
    const Eigen::VectorXd d1row = dom.cheb.d1().cwiseAbs().rowwise().sum();
    const Eigen::VectorXd d2row = dom.cheb.d2().cwiseAbs().rowwise().sum();
    for (int j = 1; j < levels - 1; ++j) {
      double drift = linf_norm(co.beta_x[j]) * xi_max + linf_norm(co.gamma[j]);
      if (twod) drift += linf_norm(co.beta_y[j]) * xi_max;
      const double mag =
          d2row(j) + linf_norm(co.alpha[j]) * xi2_max + drift * d1row(j);
      row_scale[j] = 1.0 / std::max(mag, 1.0);
    }
    {
      const int b = levels - 1;
      double b1max = 0.0, b2max = 0.0;
      for (std::size_t i = 0; i < nx; ++i) {
        b1max = std::max(b1max, std::abs(bot1[i]));
        b2max = std::max(b2max, std::hypot(bot2x[i], bot2y[i]));
      }
      row_scale[b] = 1.0 / std::max(b1max * d1row(b) + b2max * xi_max, 1.0);
    }
  }

  void scale_rows(std::vector<double>& v) const {
    for (int j = 0; j < levels; ++j) {
      const double s = row_scale[j];
      if (s == 1.0) continue;
      double* row = v.data() + static_cast<std::size_t>(j) * nx;
      for (std::size_t i = 0; i < nx; ++i) row[i] *= s;
    }
  }

  std::vector<double> apply(const std::vector<double>& v) const {
    auto out = apply_raw(v);
    scale_rows(out);
    return out;
  }

  std::vector<double> level_slice(const std::vector<double>& v, int j) const {
    return std::vector<double>(v.begin() + j * nx, v.begin() + (j + 1) * nx);
  }

  std::vector<double> apply_raw(const std::vector<double>& v) const {
    const Grid& g = dom.grid;
    Eigen::Map<const RowMat> V(v.data(), levels, nx);
    const RowMat Dv = dom.cheb.d1() * V;
    const RowMat D2v = dom.cheb.d2() * V;

    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < nx; ++i) out[i] = v[i];  // surface Dirichlet

    std::vector<double> scratch(nx);
    for (int j = 1; j < levels - 1; ++j) {
      for (std::size_t i = 0; i < nx; ++i) scratch[i] = V(j, i);
      auto spec = detail::fft_forward(g, scratch);
      auto lspec = spec;
      for (std::size_t s = 0; s < nx; ++s) lspec[s] *= lap[s];
      const auto lapv = detail::fft_inverse(g, lspec);

      for (std::size_t i = 0; i < nx; ++i) scratch[i] = Dv(j, i);
      auto dspec = detail::fft_forward(g, scratch);
      auto hxspec = dspec;
      for (std::size_t s = 0; s < nx; ++s) hxspec[s] *= dx[s];
      const auto hx = detail::fft_inverse(g, hxspec);
      std::vector<double> hy;
      if (twod) {
        auto hyspec = dspec;
        for (std::size_t s = 0; s < nx; ++s) hyspec[s] *= dy[s];
        hy = detail::fft_inverse(g, hyspec);
      }

      double* row = out.data() + j * nx;
      const Field& al = co.alpha[j];
      const Field& ga = co.gamma[j];
      const Field& bx = co.beta_x[j];
      for (std::size_t i = 0; i < nx; ++i) {
        row[i] = D2v(j, i) + al[i] * lapv[i] + bx[i] * hx[i] -
                 ga[i] * Dv(j, i);
      }
      if (twod) {
        const Field& by = co.beta_y[j];
        for (std::size_t i = 0; i < nx; ++i) row[i] += by[i] * hy[i];
      }
    }

    const int b = levels - 1;
    double* brow = out.data() + b * nx;
    {
      for (std::size_t i = 0; i < nx; ++i) scratch[i] = V(b, i);
      auto spec = detail::fft_forward(g, scratch);
      auto gxspec = spec;
      for (std::size_t s = 0; s < nx; ++s) gxspec[s] *= dx[s];
      const auto gx = detail::fft_inverse(g, gxspec);
      std::vector<double> gy;
      if (twod) {
        auto gyspec = spec;
        for (std::size_t s = 0; s < nx; ++s) gyspec[s] *= dy[s];
        gy = detail::fft_inverse(g, gyspec);
      }
      for (std::size_t i = 0; i < nx; ++i) {
        brow[i] = bot1[i] * Dv(b, i) - bot2x[i] * gx[i];
      }
      if (twod) {
        for (std::size_t i = 0; i < nx; ++i) brow[i] -= bot2y[i] * gy[i];
      }
    }
    return out;
  }

  void build_preconditioner() {
    const Eigen::MatrixXd& D1 = dom.cheb.d1();
    const Eigen::MatrixXd& D2 = dom.cheb.d2();
    std::vector<double> am(levels), gm(levels), bxm(levels), bym(levels, 0.0);
    for (int j = 0; j < levels; ++j) {
      am[j] = co.alpha[j].mean();
      gm[j] = co.gamma[j].mean();
      bxm[j] = co.beta_x[j].mean();
      if (twod) bym[j] = co.beta_y[j].mean();
    }
    double b1m = 0.0, b2xm = 0.0, b2ym = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
      b1m += bot1[i];
      b2xm += bot2x[i];
      b2ym += bot2y[i];
    }
    b1m /= nx;
    b2xm /= nx;
    b2ym /= nx;

    lus.clear();
    lus.reserve(nx);
    Eigen::MatrixXcd M(levels, levels);
    for (std::size_t s = 0; s < nx; ++s) {
      M.setZero();
      M(0, 0) = 1.0;
      for (int j = 1; j < levels - 1; ++j) {
        const std::complex<double> drift =
            bxm[j] * dx[s] + bym[j] * dy[s] - gm[j];
        for (int m = 0; m < levels; ++m) {
          M(j, m) = D2(j, m) + drift * D1(j, m);
        }
        M(j, j) += am[j] * lap[s];
        M.row(j) *= row_scale[j];
      }
      const int b = levels - 1;
      for (int m = 0; m < levels; ++m) M(b, m) = b1m * D1(b, m);
      M(b, b) -= b2xm * dx[s] + b2ym * dy[s];
      M.row(b) *= row_scale[b];
      lus.emplace_back(M);
    }
  }

  std::vector<double> precondition(const std::vector<double>& r) const {
    const Grid& g = dom.grid;
    std::vector<std::vector<std::complex<double>>> rhat(levels);
    for (int j = 0; j < levels; ++j) {
      rhat[j] = detail::fft_forward(g, level_slice(r, j));
    }
    Eigen::VectorXcd rhs(levels);
    std::vector<std::vector<std::complex<double>>> yhat(
        levels, std::vector<std::complex<double>>(nx));
    for (std::size_t s = 0; s < nx; ++s) {
      for (int j = 0; j < levels; ++j) rhs(j) = rhat[j][s];
      const Eigen::VectorXcd sol = lus[s].solve(rhs);
      for (int j = 0; j < levels; ++j) yhat[j][s] = sol(j);
    }
    std::vector<double> y(r.size());
    for (int j = 0; j < levels; ++j) {
      const auto yl = detail::fft_inverse(g, yhat[j]);
      std::copy(yl.begin(), yl.end(), y.begin() + j * nx);
    }
    return y;
  }
};

std::vector<double> stack_levels(const std::vector<Field>& levels) {
  std::vector<double> out;
  out.reserve(levels.size() * levels.front().size());
  for (const Field& f : levels) {
    out.insert(out.end(), f.values().begin(), f.values().end());
  }
  return out;
}

}  // namespace

EllipticCoefficients elliptic_coefficients(const FlattenedDomain& dom) {
  EllipticCoefficients co;
  const bool twod = dom.grid.dim() == 2;
  double max_grad2 = 0.0;
  for (int j = 0; j < dom.cheb.count(); ++j) {
    const Field& rx = dom.rho_x[j];
    const Field& rz = dom.rho_z[j];
    Field grad2 = pointwise_product(rx, rx);
    if (twod) grad2 += pointwise_product(dom.rho_y[j], dom.rho_y[j]);
    max_grad2 = std::max(max_grad2, linf_norm(grad2));
    const Field denom = Field::constant(dom.grid, 1.0) + grad2;
    const Field alpha = pointwise_divide(pointwise_product(rz, rz), denom);
    const Field beta_x =
        -2.0 * pointwise_divide(pointwise_product(rz, rx), denom);
    Field gamma_num = dom.rho_zz[j] +
                      pointwise_product(alpha, laplacian(dom.rho[j])) +
                      pointwise_product(beta_x, deriv(rz, 0));
    if (twod) {
      const Field beta_y =
          -2.0 * pointwise_divide(pointwise_product(rz, dom.rho_y[j]), denom);
      gamma_num += pointwise_product(beta_y, deriv(rz, 1));
      co.beta_y.push_back(beta_y);
    }
    co.alpha.push_back(alpha);
    co.beta_x.push_back(beta_x);
    co.gamma.push_back(pointwise_divide(gamma_num, rz));
  }
  co.c0 = dom.min_rho_z * dom.min_rho_z / (1.0 + max_grad2);
  return co;
}

std::vector<Field> elliptic_apply(const FlattenedDomain& dom,
                                  const std::vector<Field>& levels) {
  if (static_cast<int>(levels.size()) != dom.cheb.count()) {
    throw Error("elliptic_apply: level count does not match the domain");
  }
  for (const Field& f : levels) {
    require_same_grid(dom.grid, f.grid(), "elliptic_apply");
  }
  StripContext ctx(dom);
  const auto out = ctx.apply_raw(stack_levels(levels));
  std::vector<Field> result;
  result.reserve(levels.size());
  for (int j = 0; j < ctx.levels; ++j) {
    result.emplace_back(dom.grid, ctx.level_slice(out, j));
  }
  return result;
}

PotentialSolution solve_laplace(const FlattenedDomain& dom,
                                const Field& surface_data,
                                const std::vector<Field>& forcing,
                                const SolverOptions& opts,
                                const std::optional<Field>& bottom_data) {
  require_same_grid(dom.grid, surface_data.grid(), "solve_laplace");
  if (!forcing.empty() &&
      static_cast<int>(forcing.size()) != dom.cheb.count()) {
    throw Error("solve_laplace: forcing must supply every level");
  }
  for (const Field& f : forcing) {
    require_same_grid(dom.grid, f.grid(), "solve_laplace forcing");
  }
  if (bottom_data) {
    require_same_grid(dom.grid, bottom_data->grid(), "solve_laplace bottom");
    if (dom.bottom != BottomKind::flat) {
      throw Error("solve_laplace: bottom data requires a flat bottom");
    }
  }

  StripContext ctx(dom);
  ctx.build_preconditioner();
  const std::size_t nx = ctx.nx;
  const int levels = ctx.levels;
  std::vector<double> rhs(static_cast<std::size_t>(levels) * nx, 0.0);

  std::vector<Field> background;
  if (dom.bottom == BottomKind::infinite) {
    // Harmonic background e^{zbar |D|} of the surface data; the fluctuation
    // then solves the same rows with homogeneous Dirichlet data at the
    // surface and zero flux at the truncation line, so the rest state is
    // exact per mode and the mean mode carries no artificial flux.
    const double mean0 = dom.rho[0].mean();
    for (int j = 0; j < levels; ++j) {
      const double zbar = dom.rho[j].mean() - mean0;
      background.push_back(
          multiplier_apply(surface_data, mult::exp_abs(zbar)));
    }
    const auto abg = ctx.apply_raw(stack_levels(background));
    for (int j = 1; j < levels - 1; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        rhs[j * nx + i] =
            (forcing.empty() ? 0.0 : forcing[j][i]) - abg[j * nx + i];
      }
    }
  } else {
    std::copy(surface_data.values().begin(), surface_data.values().end(),
              rhs.begin());
    for (int j = 1; j < levels - 1; ++j) {
      if (!forcing.empty()) {
        std::copy(forcing[j].values().begin(), forcing[j].values().end(),
                  rhs.begin() + j * nx);
      }
    }
    if (bottom_data) {
      std::copy(bottom_data->values().begin(), bottom_data->values().end(),
                rhs.begin() + static_cast<std::size_t>(levels - 1) * nx);
    }
  }

  ctx.scale_rows(rhs);
  auto apply_fn = [&ctx](const std::vector<double>& v) { return ctx.apply(v); };
  auto precond_fn = [&ctx](const std::vector<double>& r) {
    return ctx.precondition(r);
  };
  KrylovResult kr = gmres(apply_fn, precond_fn, rhs, opts);

  if (!kr.converged) {
    if (opts.allow_dense_fallback && rhs.size() <= kDenseFallbackLimit) {
      const std::size_t total = rhs.size();
      Eigen::MatrixXd A(total, total);
      std::vector<double> unit(total, 0.0);
      for (std::size_t c = 0; c < total; ++c) {
        unit[c] = 1.0;
        const auto col = ctx.apply(unit);
        for (std::size_t r = 0; r < total; ++r) A(r, c) = col[r];
        unit[c] = 0.0;
      }
      Eigen::Map<const Eigen::VectorXd> bvec(rhs.data(), total);
      const Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(A).solve(bvec);
      kr.x.assign(x.data(), x.data() + total);
      const double bnorm = bvec.norm();
      kr.rel_residual = bnorm == 0.0 ? 0.0 : (A * x - bvec).norm() / bnorm;
      kr.converged = kr.rel_residual < std::sqrt(opts.tol);
    }
    if (!kr.converged) {
      throw SolverDiverged("solve_laplace: relative residual " +
                           format_double(kr.rel_residual) + " after " +
                           std::to_string(kr.iterations) + " iterations");
    }
  }

  PotentialSolution sol{{}, std::move(kr)};
  for (int j = 0; j < levels; ++j) {
    Field level(dom.grid, ctx.level_slice(sol.stats.x, j));
    if (!background.empty()) level += background[j];
    sol.levels.push_back(std::move(level));
  }
  return sol;
}

}  // namespace parawave
