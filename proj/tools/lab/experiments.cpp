#include "lab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <exception>
#include <filesystem>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "parawave/dn.hpp"
#include "parawave/dynamics.hpp"
#include "parawave/energy.hpp"
#include "parawave/errors.hpp"
#include "parawave/format.hpp"
#include "parawave/multiplier.hpp"
#include "parawave/norms.hpp"
#include "parawave/order_fit.hpp"
#include "parawave/parabolic.hpp"
#include "parawave/products.hpp"
#include "parawave/random_fields.hpp"
#include "parawave/taylor.hpp"

namespace parawave::lab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Regularity the energy criteria run at: s must exceed 1 + d/2 - 1/2 in one
// dimension, and 1.6 sits just above the threshold.
constexpr double kEnergyRegularity = 1.6;

Field cosine_mode(const Grid& g, int k, double amp) {
  return Field::sample(g, [&](double x, double) {
    return amp * std::cos(k * x / g.length_scale());
  });
}

double inner(const Field& a, const Field& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc / static_cast<double>(a.size());
}

double min_value(const Field& f) {
  return *std::min_element(f.values().begin(), f.values().end());
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

// Runs fn(0..count-1) across a small thread pool; trials must be
// independent and write only to their own result slots. The first thrown
// exception is rethrown on the calling thread.
void parallel_trials(int count, const std::function<void(int)>& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers =
      std::min<unsigned>(std::max(1u, hw), static_cast<unsigned>(count));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct AffineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms_residual = 0.0;
};

AffineFit affine_fit(const std::vector<double>& t,
                     const std::vector<double>& y) {
  const std::size_t n = t.size();
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < n; ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  const double denom = n * stt - st * st;
  AffineFit fit;
  fit.slope = denom != 0.0 ? (n * sty - st * sy) / denom : 0.0;
  fit.intercept = (sy - fit.slope * st) / n;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * t[i];
    acc += r * r;
  }
  fit.rms_residual = std::sqrt(acc / n);
  return fit;
}

std::string pass_detail(double value, const char* relation, double bound) {
  return format_double(value) + " " + relation + " " + format_double(bound);
}

// ---------------------------------------------------------------------------
// dn_check: flat-surface oracle, symmetry/positivity ensemble, shape
// Lipschitz ratios.

void run_dn_check(const ExperimentConfig& cfg, RunReport& rep) {
  const Grid g(cfg.dim, cfg.n, cfg.length);
  const DnParams dn = cfg.dn_params();
  const CounterRng rng(cfg.seed);

  // Flat-surface closed form: G(0) cos(k x) = xi tanh(xi h) cos(k x).
  const std::vector<int> modes = {1, 2, 4, 8, 16};
  std::vector<std::vector<double>> oracle_rows;
  double max_rel = 0.0;
  const Field flat = Field::zeros(g);
  for (int k : modes) {
    const Field psi = cosine_mode(g, k, 1.0);
    const double xi = k / g.length_scale();
    const Field exact = cosine_mode(g, k, xi * std::tanh(xi * cfg.depth));
    const double rel =
        l2_norm(dn_exact(flat, psi, dn) - exact) / l2_norm(exact);
    oracle_rows.push_back({static_cast<double>(k), rel});
    max_rel = std::max(max_rel, rel);
  }
  rep.add("flat_oracle_max_rel_error", max_rel, 1e-6);
  rep.criterion("flat-surface oracle", max_rel <= 1e-6,
                pass_detail(max_rel, "<=", 1e-6));
  const std::string oracle_csv = out_path(cfg, "dn_check_flat_oracle.csv");
  write_table_csv(oracle_csv, {"k", "rel_error"}, oracle_rows);
  rep.artifacts.push_back(oracle_csv);

  // Symmetry and positivity over a seeded ensemble of wavy surfaces.
  const int trials = 20;
  std::vector<double> sym(trials), quad(trials);
  parallel_trials(trials, [&](int i) {
    const auto stream = static_cast<std::uint64_t>(3 * i);
    const Field eta = smooth_random_field(g, rng, stream, 3.0, 0.1);
    const Field psi1 = smooth_random_field(g, rng, stream + 1, 4.0, 1.0);
    const Field psi2 = smooth_random_field(g, rng, stream + 2, 4.0, 1.0);
    const Field g1 = dn_exact(eta, psi1, dn);
    const Field g2 = dn_exact(eta, psi2, dn);
    sym[i] = std::abs(inner(g1, psi2) - inner(psi1, g2)) /
             (l2_norm(psi1) * l2_norm(psi2));
    quad[i] = inner(g1, psi1) / inner(psi1, psi1);
  });
  std::vector<std::vector<double>> state_rows;
  double max_sym = 0.0, min_quad = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    state_rows.push_back({static_cast<double>(i), sym[i], quad[i]});
    max_sym = std::max(max_sym, sym[i]);
    min_quad = std::min(min_quad, quad[i]);
  }
  rep.add("symmetry_max_defect", max_sym, 1e-8);
  rep.add("positivity_min_quadratic_form", min_quad, 0.0, 0.05);
  rep.criterion("operator symmetry", max_sym <= 1e-8,
                pass_detail(max_sym, "<=", 1e-8));
  rep.criterion("quadratic form nonnegative", min_quad >= -1e-8,
                pass_detail(min_quad, ">=", -1e-8));
  const std::string states_csv = out_path(cfg, "dn_check_random_states.csv");
  write_table_csv(states_csv, {"trial", "symmetry_defect", "quadratic_form"},
                  state_rows);
  rep.artifacts.push_back(states_csv);

  // Shape Lipschitz probe: the normalized difference quotient must be
  // stable across three perturbation sizes.
  const Field eta1 = smooth_random_field(g, rng, 101, 2.0, 0.08);
  const Field bump = smooth_random_field(g, rng, 102, 3.0, 0.05);
  const Field f = smooth_random_field(g, rng, 103, 5.0, 1.0);
  const std::vector<double> epsilons = {1e-2, 1e-3, 1e-4};
  std::vector<std::vector<double>> lip_rows;
  std::vector<double> ratios;
  for (double eps : epsilons) {
    const auto probe =
        dn_lipschitz_probe(eta1, eta1 + eps * bump, f, 2.0, dn);
    ratios.push_back(probe.ratio);
    lip_rows.push_back({eps, probe.ratio, probe.diff_norm, probe.eta_gap});
  }
  const double rmax = *std::max_element(ratios.begin(), ratios.end());
  const double rmin = *std::min_element(ratios.begin(), ratios.end());
  const double rmean = (ratios[0] + ratios[1] + ratios[2]) / 3.0;
  const double spread = (rmax - rmin) / rmean;
  rep.add("lipschitz_ratio_mean", rmean, 0.0, 0.05);
  rep.add("lipschitz_ratio_spread", spread, 0.02, 0.25);
  rep.criterion("shape lipschitz ratios agree", spread <= 0.10,
                pass_detail(spread, "<=", 0.10));
  const std::string lip_csv = out_path(cfg, "dn_check_lipschitz.csv");
  write_table_csv(lip_csv, {"epsilon", "ratio", "diff_norm", "eta_gap"},
                  lip_rows);
  rep.artifacts.push_back(lip_csv);
}

// ---------------------------------------------------------------------------
// paralin_order: the paradifferential principal part absorbs the full order
// of the operator; the remainder fits at least a quarter derivative lower.

void run_paralin_order(const ExperimentConfig& cfg, RunReport& rep) {
  const Grid g(cfg.dim, cfg.n, cfg.length);
  const DnParams dn = cfg.dn_params();
  // Fixed moderate bump: smooth, localized, steepness about 0.12.
  const Field eta = Field::sample(g, [](double x, double) {
    return 0.15 * std::exp(2.0 * (std::cos(x) - 1.0));
  });

  const int kmax = std::min(64, cfg.n / 4);
  const auto ks = probe_frequencies(g, 8, kmax, 7);

  const auto full = fit_operator_order(
      [&](const Field& u) { return dn_exact(eta, u, dn); }, g, ks);
  const auto remainder = fit_operator_order(
      [&](const Field& u) {
        return dn_exact(eta, u, dn) - dn_para(eta, u);
      },
      g, ks);

  rep.add("full_operator_slope", full.slope, 0.05);
  rep.add("remainder_slope", remainder.slope, 0.05);
  rep.criterion("full operator is first order", full.slope >= 0.9,
                pass_detail(full.slope, ">=", 0.9));
  rep.criterion("paralinearization remainder gains a quarter derivative",
                !remainder.exact_zero && remainder.slope <= 0.75,
                pass_detail(remainder.slope, "<=", 0.75));

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < ks.size(); ++i)
    rows.push_back({static_cast<double>(ks[i]), full.response_norms[i],
                    remainder.response_norms[i]});
  const std::string csv = out_path(cfg, "paralin_order_responses.csv");
  write_table_csv(csv, {"k", "full_norm", "remainder_norm"}, rows);
  rep.artifacts.push_back(csv);
}

// ---------------------------------------------------------------------------
// symcalc_order: composition and adjoint remainders of the quantization fit
// below the orders the symbolic calculus predicts.

void run_symcalc_order(const ExperimentConfig& cfg, RunReport& rep) {
  const Grid g(cfg.dim, cfg.n, cfg.length);
  const auto abs_profile = [](const std::array<double, 2>& xi) {
    return std::complex<double>(std::hypot(xi[0], xi[1]), 0.0);
  };
  const Field ca = Field::sample(
      g, [](double x, double) { return 1.0 + 0.3 * std::cos(x); });
  const Field cb = Field::sample(
      g, [](double x, double) { return 1.0 + 0.3 * std::sin(x); });

  std::vector<SymbolTerm> ta, tb;
  ta.push_back({ca, abs_profile});
  tb.push_back({cb, abs_profile});
  const auto a1 = SymbolRep::separable(g, std::move(ta), 1.0, 2.0);
  const auto b1 = SymbolRep::separable(g, std::move(tb), 1.0, 2.0);

  const int kmax = std::min(64, cfg.n / 4);
  const auto ks = probe_frequencies(g, 8, kmax, 6);

  const auto comp = compose_error_fit(a1, b1, ks);
  rep.add("composition_error_slope", comp.slope, 0.05);
  rep.criterion("composition remainder loses a derivative",
                !comp.exact_zero && comp.slope <= 1.2,
                pass_detail(comp.slope, "<=", 1.2));

  // Order-zero symbol with a genuinely xi-dependent profile.
  std::vector<SymbolTerm> t0;
  t0.push_back({ca, [](const std::array<double, 2>& xi) {
                  const double r = std::hypot(xi[0], xi[1]);
                  return std::complex<double>(r / std::sqrt(1.0 + r * r), 0.0);
                }});
  const auto a0 = SymbolRep::separable(g, std::move(t0), 0.0, 2.0);
  const auto adj = adjoint_error_fit(a0, ks);
  rep.add("adjoint_error_slope", adj.slope, 0.05);
  rep.criterion("adjoint remainder loses a derivative",
                !adj.exact_zero && adj.slope <= 0.2,
                pass_detail(adj.slope, "<=", 0.2));

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < ks.size(); ++i)
    rows.push_back({static_cast<double>(ks[i]), comp.response_norms[i],
                    adj.response_norms[i]});
  const std::string csv = out_path(cfg, "symcalc_order_responses.csv");
  write_table_csv(csv, {"k", "composition_error", "adjoint_error"}, rows);
  rep.artifacts.push_back(csv);
}

// ---------------------------------------------------------------------------
// parabolic_check: the vertical marcher reproduces the exact semigroup for a
// constant symbol and refines at first order for variable coefficients.

void run_parabolic_check(const ExperimentConfig& cfg, RunReport& rep) {
  const Grid g(cfg.dim, cfg.n, cfg.length);
  const CounterRng rng(cfg.seed);
  const auto abs_profile = [](const std::array<double, 2>& xi) {
    return std::complex<double>(std::hypot(xi[0], xi[1]), 0.0);
  };

  const int mode = 8;
  const Field w0 = probe_wave(g, mode);
  const auto p = SymbolRep::multiplier(g, abs_profile, 1.0);
  const auto levels = parabolic_evolve(p, w0, nullptr, 0.0, 1.0, cfg.nz);
  const double xi = mode / g.length_scale();
  double semigroup_err = 0.0;
  std::vector<std::vector<double>> sg_rows;
  for (int j = 0; j <= cfg.nz; ++j) {
    const double z = static_cast<double>(j) / cfg.nz;
    const double err = linf_norm(levels[j] - std::exp(-z * xi) * w0);
    sg_rows.push_back({z, err});
    semigroup_err = std::max(semigroup_err, err);
  }
  rep.add("semigroup_max_error", semigroup_err, 1e-6);
  rep.criterion("constant-symbol semigroup", semigroup_err <= 1e-6,
                pass_detail(semigroup_err, "<=", 1e-6));
  const std::string sg_csv = out_path(cfg, "parabolic_check_semigroup.csv");
  write_table_csv(sg_csv, {"z", "max_error"}, sg_rows);
  rep.artifacts.push_back(sg_csv);

  // Variable-coefficient refinement: first-order scheme, so halving the
  // step should roughly halve the error.
  const Field c = Field::sample(
      g, [](double x, double) { return 1.0 + 0.3 * std::cos(x); });
  std::vector<SymbolTerm> terms;
  terms.push_back({c, abs_profile});
  const auto pv = SymbolRep::separable(g, std::move(terms), 1.0, 2.0);
  const Field v0 = smooth_random_field(g, rng, 10, 5.0, 0.5);
  const Field ref = parabolic_evolve(pv, v0, nullptr, 0.0, 0.5, 1024).back();
  std::vector<std::vector<double>> ref_rows;
  std::vector<double> errs;
  for (int nz : {32, 64, 128}) {
    const double err =
        l2_norm(parabolic_evolve(pv, v0, nullptr, 0.0, 0.5, nz).back() - ref);
    ref_rows.push_back({static_cast<double>(nz), err});
    errs.push_back(err);
  }
  const double ratio1 = errs[0] / errs[1];
  const double ratio2 = errs[1] / errs[2];
  const double worst = std::min(ratio1, ratio2);
  rep.add("refinement_ratio_32_64", ratio1, 0.0, 0.05);
  rep.add("refinement_ratio_64_128", ratio2, 0.0, 0.05);
  rep.criterion("variable-coefficient refinement", worst >= 1.8,
                pass_detail(worst, ">=", 1.8));
  const std::string rf_csv = out_path(cfg, "parabolic_check_refinement.csv");
  write_table_csv(rf_csv, {"nz", "error"}, ref_rows);
  rep.artifacts.push_back(rf_csv);
}

// ---------------------------------------------------------------------------
// taylor_check: both Taylor-coefficient routes give exactly g at rest and
// agree with each other on moving states.

void run_taylor_check(const ExperimentConfig& cfg, RunReport& rep) {
  const Grid g(cfg.dim, cfg.n, cfg.length);
  const CounterRng rng(cfg.seed);
  WaveParams params = cfg.wave_params();
  const Field gconst = Field::constant(g, cfg.gravity);

  const WaveState rest{Field::zeros(g), Field::zeros(g)};
  const double rest_pressure =
      linf_norm(taylor_pressure(rest, params) - gconst);
  const double rest_shape =
      linf_norm(taylor_shape_derivative(rest, params) - gconst);

  // Truncated bottomless configuration, fixed at the resolution where the
  // truncation error sits below the solver floor.
  WaveParams deep = params;
  deep.dn.depth = 3.0;
  deep.dn.bottom = BottomKind::infinite;
  deep.dn.nz = std::max(cfg.nz, 48);
  const double rest_pressure_deep =
      linf_norm(taylor_pressure(rest, deep) - gconst);
  const double rest_shape_deep =
      linf_norm(taylor_shape_derivative(rest, deep) - gconst);

  rep.add("rest_pressure_dev", rest_pressure, 1e-10);
  rep.add("rest_shape_dev", rest_shape, 1e-10);
  rep.add("rest_pressure_dev_deep", rest_pressure_deep, 1e-10);
  rep.add("rest_shape_dev_deep", rest_shape_deep, 1e-10);
  const double rest_worst =
      std::max({rest_pressure, rest_shape, rest_pressure_deep,
                rest_shape_deep});
  rep.criterion("rest coefficient equals gravity", rest_worst <= 1e-10,
                pass_detail(rest_worst, "<=", 1e-10));

  const int trials = 10;
  std::vector<double> gaps(trials), mins(trials);
  parallel_trials(trials, [&](int i) {
    const auto stream = static_cast<std::uint64_t>(20 + 2 * i);
    const WaveState state{smooth_random_field(g, rng, stream, 2.0, 0.04),
                          smooth_random_field(g, rng, stream + 1, 2.0, 0.04)};
    const Field ap = taylor_pressure(state, params);
    const Field as = taylor_shape_derivative(state, params);
    gaps[i] = linf_norm(ap - as);
    mins[i] = std::min(min_value(ap), min_value(as));
  });
  std::vector<std::vector<double>> rows;
  double max_gap = 0.0, min_a = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    rows.push_back({static_cast<double>(i), gaps[i], mins[i]});
    max_gap = std::max(max_gap, gaps[i]);
    min_a = std::min(min_a, mins[i]);
  }
  rep.add("cross_method_max_gap", max_gap, 1e-3 * cfg.gravity);
  rep.add("ensemble_min_a", min_a, 0.0, 0.05);
  rep.criterion("independent routes agree", max_gap <= 1e-3 * cfg.gravity,
                pass_detail(max_gap, "<=", 1e-3 * cfg.gravity));
  const std::string csv = out_path(cfg, "taylor_check_gaps.csv");
  write_table_csv(csv, {"trial", "route_gap", "min_a"}, rows);
  rep.artifacts.push_back(csv);
}

// ---------------------------------------------------------------------------
// dispersion: a tiny cosine oscillates at the gravity-wave frequency.

void run_dispersion(const ExperimentConfig& cfg, RunReport& rep) {
  const Grid g(cfg.dim, cfg.n, cfg.length);
  const WaveParams params = cfg.wave_params();
  const int mode = 4;
  const double amp = 1e-4;
  const double xi = mode / g.length_scale();
  const double omega0 =
      std::sqrt(cfg.gravity * xi * std::tanh(xi * cfg.depth));
  const double period = 2.0 * kPi / omega0;
  const double dt_max = cfl_limit(g, cfg.gravity, cfg.cfl);
  const int steps = static_cast<int>(std::ceil(5.0 * period / dt_max));
  const double dt = 5.0 * period / steps;

  WaveState state{cosine_mode(g, mode, amp), Field::zeros(g)};
  const std::size_t spec_index = g.spectral_index(mode);
  std::vector<std::vector<double>> trace_rows;
  std::vector<double> crossings;
  double prev = state.eta.spectrum()[spec_index].real();
  trace_rows.push_back({0.0, prev});
  for (int i = 1; i <= steps; ++i) {
    state = step_rk4(state, params, dt);
    const double cur = state.eta.spectrum()[spec_index].real();
    trace_rows.push_back({i * dt, cur});
    if ((prev > 0.0 && cur <= 0.0) || (prev < 0.0 && cur >= 0.0))
      crossings.push_back(dt * (i - 1) + dt * prev / (prev - cur));
    prev = cur;
  }

  double fitted_omega = 0.0;
  if (crossings.size() >= 2) {
    std::vector<double> index(crossings.size());
    for (std::size_t m = 0; m < crossings.size(); ++m)
      index[m] = static_cast<double>(m);
    const auto fit = affine_fit(index, crossings);
    // Consecutive crossings are half a period apart.
    if (fit.slope > 0.0) fitted_omega = kPi / fit.slope;
  }
  const double rel_dev = std::abs(fitted_omega - omega0) / omega0;
  rep.add("fitted_omega", fitted_omega, 0.0, 0.002);
  rep.add("expected_omega", omega0, 1e-12);
  rep.add("dispersion_rel_dev", rel_dev, 0.005);
  rep.criterion("linear dispersion frequency", rel_dev <= 0.005,
                pass_detail(rel_dev, "<=", 0.005));
  const std::string csv = out_path(cfg, "dispersion_mode.csv");
  write_table_csv(csv, {"t", "mode_re"}, trace_rows);
  rep.artifacts.push_back(csv);
}

// ---------------------------------------------------------------------------
// evolve: rest equilibrium, traveling-wave conservation, and rough-data
// viability scenarios over the full time-stepping stack.

struct Trajectory {
  // Columns: t, H, E_s, min_a, max|eta|, sobolev(eta, s+1/2),
  // sobolev(psi, s+1/2).
  std::vector<std::vector<double>> rows;
  WaveState final_state;
  bool completed = true;
  std::string abort_reason;
};

Trajectory run_trajectory(WaveState state, const WaveParams& params,
                          double dt, int steps, double s) {
  Trajectory traj{.rows = {}, .final_state = state};
  const auto log_row = [&](double t, const WaveState& st) {
    const Field a = taylor_shape_derivative(st, params);
    const auto gu = good_unknowns(st, params, s, a);
    double es = 0.0;
    for (const auto& u : gu.u_s) es += l2_norm(u) * l2_norm(u);
    for (const auto& th : gu.theta_s) es += l2_norm(th) * l2_norm(th);
    traj.rows.push_back({t, hamiltonian(st, params), es, min_value(a),
                         linf_norm(st.eta), sobolev_norm(st.eta, s + 0.5),
                         sobolev_norm(st.psi, s + 0.5)});
  };
  log_row(0.0, state);
  for (int i = 1; i <= steps; ++i) {
    try {
      state = step_rk4(state, params, dt);
      log_row(i * dt, state);
    } catch (const CflViolation& e) {
      traj.completed = false;
      traj.abort_reason = e.what();
      break;
    } catch (const TaylorSignViolation& e) {
      traj.completed = false;
      traj.abort_reason = e.what();
      break;
    } catch (const SolverDiverged& e) {
      traj.completed = false;
      traj.abort_reason = e.what();
      break;
    }
  }
  traj.final_state = state;
  return traj;
}

void write_trajectory(const ExperimentConfig& cfg, RunReport& rep,
                      const std::string& name, const Trajectory& traj) {
  const std::string csv = out_path(cfg, name);
  write_table_csv(csv,
                  {"t", "H", "E_s", "min_a", "max_eta", "sobolev_eta",
                   "sobolev_psi"},
                  traj.rows);
  rep.artifacts.push_back(csv);
}

void write_checkpoints(const ExperimentConfig& cfg, RunReport& rep,
                       const std::string& prefix, const WaveState& initial,
                       const WaveState& final_state) {
  const struct {
    const char* name;
    const Field& field;
  } files[] = {
      {"_eta_initial.csv", initial.eta},
      {"_psi_initial.csv", initial.psi},
      {"_eta_final.csv", final_state.eta},
      {"_psi_final.csv", final_state.psi},
  };
  for (const auto& f : files) {
    const std::string path = out_path(cfg, prefix + f.name);
    write_field_csv(path, f.field);
    rep.artifacts.push_back(path);
  }
}

// Residual of the derived gradient evolution
//   (d_t + V . grad) grad eta = G(eta) V + (grad eta) G(eta) B + gamma,
// with d_t grad eta = grad G(eta) psi substituted spectrally. The remainder
// gamma vanishes formally for a bottomless fluid; its discrete size here is
// reported, not asserted.
double zeta_equation_residual(const WaveState& state,
                              const WaveParams& params) {
  const Grid& g = state.eta.grid();
  const auto tr = compute_traces(state, params);
  const Field gb = dn_exact(state.eta, tr.b, params.dn);
  double acc = 0.0;
  for (int i = 0; i < g.dim(); ++i) {
    const Field zeta_i = deriv(state.eta, i);
    Field res = deriv(tr.g_psi, i) - dn_exact(state.eta, tr.v[i], params.dn) -
                dealias_product(zeta_i, gb);
    for (int j = 0; j < g.dim(); ++j)
      res += dealias_product(tr.v[j], deriv(zeta_i, j));
    acc += l2_norm(res) * l2_norm(res);
  }
  return std::sqrt(acc);
}

void run_evolve_rest(const ExperimentConfig& cfg, RunReport& rep) {
  const Grid g(cfg.dim, cfg.n, cfg.length);
  const WaveParams params = cfg.wave_params();
  const double dt = cfl_limit(g, cfg.gravity, cfg.cfl);
  const WaveState rest{Field::zeros(g), Field::zeros(g)};
  const auto traj = run_trajectory(rest, params, dt, 100, kEnergyRegularity);

  double drift = 0.0;
  for (const auto& row : traj.rows)
    drift = std::max({drift, std::abs(row[1]), row[2], row[4], row[5],
                      row[6]});
  rep.add("rest_drift", drift, 1e-12);
  rep.criterion("rest state stays at rest",
                traj.completed && drift <= 1e-12,
                traj.completed ? pass_detail(drift, "<=", 1e-12)
                               : traj.abort_reason);
  write_trajectory(cfg, rep, "evolve_rest_trajectory.csv", traj);
}

void run_evolve_traveling(const ExperimentConfig& cfg, RunReport& rep) {
  const Grid g(cfg.dim, cfg.n, cfg.length);
  const WaveParams params = cfg.wave_params();

  // Linear traveling wave at steepness 0.05: eta = A cos(k x),
  // psi = A (omega / kappa) sin(k x) with kappa = xi tanh(xi h).
  const int mode = 2;
  const double xi = mode / g.length_scale();
  const double steepness = 0.05;
  const double amp = steepness / xi;
  const double kappa = xi * std::tanh(xi * cfg.depth);
  const double omega = std::sqrt(cfg.gravity * kappa);
  const double period = 2.0 * kPi / omega;

  const Field eta0 = cosine_mode(g, mode, amp);
  const Field psi0 = Field::sample(g, [&](double x, double) {
    return amp * omega / kappa * std::sin(mode * x / g.length_scale());
  });
  const WaveState initial{eta0, psi0};

  const double dt_max = cfl_limit(g, cfg.gravity, cfg.cfl);
  const int steps = static_cast<int>(std::ceil(period / dt_max));
  const double dt = period / steps;
  const auto traj =
      run_trajectory(initial, params, dt, steps, kEnergyRegularity);

  const double h0 = traj.rows.front()[1];
  double h_drift = 0.0;
  for (const auto& row : traj.rows)
    h_drift = std::max(h_drift, std::abs(row[1] - h0) / std::abs(h0));
  rep.add("hamiltonian_rel_drift", h_drift, 1e-6);
  rep.criterion("hamiltonian conserved over a period",
                traj.completed && h_drift <= 1e-6,
                traj.completed ? pass_detail(h_drift, "<=", 1e-6)
                               : traj.abort_reason);

  // Bounded growth of the symmetrized energy on the initial tenth of the
  // period: affine fit with a finite slope and a small residual.
  std::vector<double> ts, es;
  for (const auto& row : traj.rows) {
    if (row[0] <= period / 10.0 + 1e-12) {
      ts.push_back(row[0]);
      es.push_back(row[2]);
    }
  }
  const double es0 = traj.rows.front()[2];
  const auto fit = affine_fit(ts, es);
  const double rel_residual = fit.rms_residual / es0;
  rep.add("energy_growth_rate", fit.slope, 0.0, 0.2);
  rep.add("energy_fit_rel_residual", rel_residual, 0.01, 0.5);
  rep.criterion("symmetrized energy grows at most linearly",
                std::isfinite(fit.slope) && rel_residual <= 0.05,
                pass_detail(rel_residual, "<=", 0.05));

  // Reported diagnostic only: discrete size of the gradient-equation
  // remainder, formally zero for a bottomless fluid.
  const double gamma = zeta_equation_residual(initial, params);
  rep.add("zeta_equation_residual", gamma, 1e-5);

  write_trajectory(cfg, rep, "evolve_traveling_trajectory.csv", traj);
  write_checkpoints(cfg, rep, "evolve_traveling", initial, traj.final_state);
}

void run_evolve_rough(const ExperimentConfig& cfg, RunReport& rep) {
  const Grid g(cfg.dim, cfg.n, cfg.length);
  const CounterRng rng(cfg.seed);
  const WaveParams params = cfg.wave_params();

  // Spectral-decay surrogate for data just above the threshold regularity.
  const double decay = kEnergyRegularity + 0.5 + 0.5 * cfg.dim;
  const WaveState initial{rough_field(g, rng, 1, decay, 0.03),
                          rough_field(g, rng, 2, decay, 0.03)};
  const double dt = cfl_limit(g, cfg.gravity, cfg.cfl);
  const int steps = 200;
  const auto traj =
      run_trajectory(initial, params, dt, steps, kEnergyRegularity);

  double min_a = std::numeric_limits<double>::infinity();
  for (const auto& row : traj.rows) min_a = std::min(min_a, row[3]);

  // Norm-like columns must stay within a factor 10 of their initial size.
  double worst_ratio = 0.0;
  for (std::size_t col : {2, 4, 5, 6}) {
    const double initial_value = traj.rows.front()[col];
    for (const auto& row : traj.rows)
      worst_ratio = std::max(worst_ratio, row[col] / initial_value);
  }
  rep.add("rough_min_a", min_a, 0.0, 0.05);
  rep.add("rough_worst_norm_ratio", worst_ratio, 0.0, 0.25);
  const bool pass = traj.completed && min_a >= 0.5 * cfg.gravity &&
                    worst_ratio <= 10.0;
  std::ostringstream detail;
  if (!traj.completed) {
    detail << traj.abort_reason;
  } else {
    detail << "min a = " << format_double(min_a) << ", worst norm ratio = "
           << format_double(worst_ratio);
  }
  rep.criterion("rough data remains viable", pass, detail.str());
  write_trajectory(cfg, rep, "evolve_rough_trajectory.csv", traj);
  write_checkpoints(cfg, rep, "evolve_rough", initial, traj.final_state);
}

void run_evolve(const ExperimentConfig& cfg, RunReport& rep) {
  const bool all = cfg.scenario == EvolveScenario::all;
  if (all || cfg.scenario == EvolveScenario::rest) run_evolve_rest(cfg, rep);
  if (all || cfg.scenario == EvolveScenario::traveling)
    run_evolve_traveling(cfg, rep);
  if (all || cfg.scenario == EvolveScenario::rough) run_evolve_rough(cfg, rep);
}

// ---------------------------------------------------------------------------
// contraction: the regularized flows converge to the unregularized one
// linearly in epsilon, monotonically.

void run_contraction(const ExperimentConfig& cfg, RunReport& rep) {
  const Grid g(cfg.dim, cfg.n, cfg.length);
  const CounterRng rng(cfg.seed);
  const WaveState initial{smooth_random_field(g, rng, 30, 2.0, 0.05),
                          smooth_random_field(g, rng, 31, 2.0, 0.05)};

  const double horizon = 1.0;
  const double dt_max = cfl_limit(g, cfg.gravity, cfg.cfl);
  const int steps = static_cast<int>(std::ceil(horizon / dt_max));
  const double dt = horizon / steps;

  const auto evolve_eta = [&](double epsilon) {
    WaveParams params = cfg.wave_params();
    params.epsilon = epsilon;
    WaveState state = initial;
    for (int i = 0; i < steps; ++i) state = step_rk4(state, params, dt);
    return state.eta;
  };

  const Field base = evolve_eta(0.0);
  const double gap3 = l2_norm(evolve_eta(1e-3) - base);
  const double gap4 = l2_norm(evolve_eta(1e-4) - base);

  // Frozen linear-rate constant: measured slopes sit well below it.
  const double rate_bound = 1.0;
  rep.add("gap_eps_1e3", gap3, 0.0, 0.05);
  rep.add("gap_eps_1e4", gap4, 0.0, 0.05);
  rep.add("gap_slope_1e3", gap3 / 1e-3, 0.0, 0.05);
  rep.add("gap_slope_1e4", gap4 / 1e-4, 0.0, 0.05);
  rep.criterion("regularization gap bounded linearly",
                gap3 <= rate_bound * 1e-3 && gap4 <= rate_bound * 1e-4,
                "slopes " + format_double(gap3 / 1e-3) + ", " +
                    format_double(gap4 / 1e-4) + " <= " +
                    format_double(rate_bound));
  rep.criterion("regularization gap monotone in epsilon",
                gap3 > gap4 && gap4 > 0.0,
                format_double(gap3) + " > " + format_double(gap4) + " > 0");

  write_table_csv(out_path(cfg, "contraction_gaps.csv"), {"epsilon", "gap"},
                  {{1e-3, gap3}, {1e-4, gap4}});
  rep.artifacts.push_back(out_path(cfg, "contraction_gaps.csv"));
}

}  // namespace

RunReport run(const ExperimentConfig& config) {
  config.validate();
  RunReport rep;
  rep.config = config;

  const auto start = std::chrono::steady_clock::now();
  switch (config.experiment) {
    case Experiment::dn_check: run_dn_check(config, rep); break;
    case Experiment::paralin_order: run_paralin_order(config, rep); break;
    case Experiment::symcalc_order: run_symcalc_order(config, rep); break;
    case Experiment::parabolic_check: run_parabolic_check(config, rep); break;
    case Experiment::taylor_check: run_taylor_check(config, rep); break;
    case Experiment::dispersion: run_dispersion(config, rep); break;
    case Experiment::evolve: run_evolve(config, rep); break;
    case Experiment::contraction: run_contraction(config, rep); break;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();

  const std::string cfg_path =
      out_path(config, std::string(experiment_name(config.experiment)) +
                           ".config");
  write_text(cfg_path, config_text(config));
  rep.artifacts.push_back(cfg_path);
  write_text(out_path(config,
                      std::string(experiment_name(config.experiment)) +
                          "_report.json"),
             rep.to_json());
  return rep;
}

}  // namespace parawave::lab
