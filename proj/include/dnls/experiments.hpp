#pragma once

#include <sstream>

#include "csv.hpp"
#include "evolution.hpp"
#include "fitting.hpp"
#include "gauge.hpp"
#include "invariants.hpp"

namespace dnls {

// ---------------------------------------------------------------------------
// Finite-dimensional approximation rate (truncated vs reference run).

struct ConvergenceConfig {
  SpectralProfile profile{};
  double s = 0.6, s_prime = 0.45;
  double s1 = 1.0, s1_prime = 0.6, p = 3.0;
  std::vector<int> levels{32, 64, 128, 256};
  int n_ref = 1024;
  double t_end = 0.1;
  double dt = 0.0;  // 0: stability default
  int record_stride = 0;  // 0: ~20 recorded frames
  int band_limit = 0;  // >0: band-limit the data before the runs
  MuMode::Kind mu_kind = MuMode::instantaneous;

  void validate() const {
    if (!(s_prime < s)) throw precondition_error("converge: need s' < s");
    if (!(s1_prime < s1)) throw precondition_error("converge: need s1' < s1");
    if (!(2.0 < p && p < 4.0)) throw precondition_error("converge: need 2 < p < 4");
    if (levels.size() < 2) throw precondition_error("converge: need >= 2 levels");
    for (size_t i = 1; i < levels.size(); ++i)
      if (levels[i] <= levels[i - 1]) throw precondition_error("converge: levels not increasing");
    if (levels.back() > n_ref / 4) throw precondition_error("converge: max level > n_ref/4");
  }
};

struct ConvergenceLevel {
  int n = 0;
  double err_hs = 0.0;
  double err_fl = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;
  double fitted_slope = 0.0;
  double predicted_exponent = 0.0;
  double fit_r2 = 0.0;
  double ref_floor = 0.0;  // max-frame reference vs n_ref/2 discrepancy
  bool degenerate = false;  // all errors at integrator noise floor
  ConvergenceConfig config{};
};

namespace detail {

inline SimConfig make_sim(int n_max, double dt, double t_end, int stride, MuMode mm) {
  SimConfig cfg;
  cfg.n_max = n_max;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.record_stride = stride;
  cfg.mu_mode = mm;
  return cfg;
}

inline MuMode resolve_mu_mode(MuMode::Kind kind, const SpectralState& u0) {
  return kind == MuMode::constant ? MuMode::constant_from(u0) : MuMode::instant();
}

}  // namespace detail

// Evolves the reference at n_ref and each truncation from projected data;
// errors are max over recorded frames against the reference.
inline ConvergenceReport convergence_experiment(const ConvergenceConfig& cfg_in) {
  ConvergenceConfig cfg = cfg_in;
  cfg.validate();
  SpectralState u0 = random_state(cfg.profile, cfg.n_ref);
  if (cfg.band_limit > 0) u0 = project(u0, band_le(cfg.band_limit));
  double dt = cfg.dt > 0.0 ? cfg.dt : 0.5 * default_dt(cfg.n_ref, mu(u0));
  long long n_steps = std::max(1ll, static_cast<long long>(std::ceil(cfg.t_end / dt - 1e-9)));
  dt = cfg.t_end / static_cast<double>(n_steps);
  int stride = cfg.record_stride > 0 ? cfg.record_stride
                                     : std::max(1, static_cast<int>(n_steps / 20));
  while (n_steps % stride != 0) --stride;  // keep frames uniform
  cfg.dt = dt;
  cfg.record_stride = stride;

  const auto run = [&](int n) {
    const SpectralState init = with_n_max(project(u0, band_le(n)), n);
    Trajectory tr = evolve(init, detail::make_sim(n, dt, cfg.t_end, stride,
                                                  detail::resolve_mu_mode(cfg.mu_kind, init)));
    tr.provenance = cfg.profile.describe() + " P<=" + std::to_string(n);
    tr.seed = cfg.profile.seed;
    return tr;
  };

  const Trajectory ref = run(cfg.n_ref);
  const Trajectory half = run(cfg.n_ref / 2);

  const NormSpec hs = NormSpec::hs(cfg.s_prime);
  const NormSpec fl = NormSpec::fl(cfg.s1_prime, cfg.p);
  const auto max_err = [&](const Trajectory& t, const NormSpec& ns) {
    double m = 0.0;
    for (size_t k = 0; k < ref.frames.size(); ++k) {
      const SpectralState d = ref.frames[k] - with_n_max(t.frames[k], cfg.n_ref);
      m = std::max(m, norm(d, ns));
    }
    return m;
  };

  ConvergenceReport rep;
  rep.config = cfg;
  rep.ref_floor = max_err(half, hs);
  for (int n : cfg.levels) {
    const Trajectory tr = run(n);
    rep.levels.push_back({n, max_err(tr, hs), max_err(tr, fl)});
  }

  rep.predicted_exponent = std::max(cfg.s_prime - cfg.profile.sigma + 0.5,
                                    cfg.s1_prime - cfg.profile.sigma + 1.0 / cfg.p);
  rep.degenerate = true;
  for (const auto& lv : rep.levels)
    if (lv.err_hs > 1e-9) rep.degenerate = false;
  if (!rep.degenerate) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& lv : rep.levels) pts.emplace_back(lv.n, lv.err_hs);
    const FitResult fit = fit_loglog_slope(pts);
    rep.fitted_slope = fit.slope;
    rep.fit_r2 = fit.r2;
  }
  return rep;
}

inline CsvTable convergence_csv(const ConvergenceReport& rep) {
  CsvTable t;
  t.header = {"n", "err_hs", "err_fl"};
  for (const auto& lv : rep.levels)
    t.rows.push_back({format_int(lv.n), format_double(lv.err_hs), format_double(lv.err_fl)});
  return t;
}

// ---------------------------------------------------------------------------
// Tail growth under the flow (small-mass regime).

struct TailConfig {
  SpectralProfile profile{};
  double s = 0.45;
  std::vector<int> ns{64, 128, 256, 512};
  std::vector<double> c_grid{1.0, 1.5, 2.0, 3.0, 4.0};
  int n_max = 1024;
  double t_end = 0.5;
  double dt = 0.0;
  int record_stride = 0;
  int band_limit = 0;  // >0: band-limit the data first
  MuMode::Kind mu_kind = MuMode::constant;
};

struct TailRow {
  int n = 0;
  double sup_tail_hs = 0.0;
  double data_tail_hs = 0.0;  // at the fitted C
};

struct TailReport {
  std::vector<TailRow> rows;
  double fitted_c = 0.0;
  double fitted_eps = 0.0;  // 0 when no positive-epsilon envelope exists
  TailConfig config{};
};

inline TailReport tail_experiment(const TailConfig& cfg_in) {
  TailConfig cfg = cfg_in;
  SpectralState u0 = random_state(cfg.profile, cfg.n_max);
  if (cfg.band_limit > 0) u0 = project(u0, band_le(cfg.band_limit));
  if (std::sqrt(mass(u0)) > 0.5)
    throw precondition_error("tail_experiment: ||u0||_{L2} > 0.5, outside the small-mass regime");
  double dt = cfg.dt > 0.0 ? cfg.dt : 0.5 * default_dt(cfg.n_max, mu(u0));
  long long n_steps = std::max(1ll, static_cast<long long>(std::ceil(cfg.t_end / dt - 1e-9)));
  dt = cfg.t_end / static_cast<double>(n_steps);
  int stride = cfg.record_stride > 0 ? cfg.record_stride
                                     : std::max(1, static_cast<int>(n_steps / 40));
  cfg.dt = dt;
  cfg.record_stride = stride;

  Trajectory traj = evolve(u0, detail::make_sim(cfg.n_max, dt, cfg.t_end, stride,
                                                detail::resolve_mu_mode(cfg.mu_kind, u0)));
  traj.provenance = cfg.profile.describe();
  traj.seed = cfg.profile.seed;

  const NormSpec hs = NormSpec::hs(cfg.s);
  std::vector<double> sup(cfg.ns.size(), 0.0);
  for (const SpectralState& f : traj.frames)
    for (size_t i = 0; i < cfg.ns.size(); ++i)
      sup[i] = std::max(sup[i], norm(project(f, band_ge(cfg.ns[i])), hs));

  const auto data_tail = [&](double c, int n) {
    const int cut = static_cast<int>(std::ceil(c * n));
    return norm(project(u0, band_ge(cut)), hs);
  };

  // Smallest C in the grid admitting a positive epsilon, then the largest
  // epsilon that keeps sup_tail(N) <= C data_tail(CN) + C N^{-eps} on all rows.
  TailReport rep;
  rep.config = cfg;
  const double eps_cap = 5.0;
  for (double c : cfg.c_grid) {
    double eps = eps_cap;
    bool feasible = true;
    for (size_t i = 0; i < cfg.ns.size(); ++i) {
      const double slack = sup[i] - c * data_tail(c, cfg.ns[i]);
      if (slack <= 0.0) continue;
      if (slack >= c) {
        feasible = false;
        break;
      }
      eps = std::min(eps, std::log(c / slack) / std::log(static_cast<double>(cfg.ns[i])));
    }
    if (feasible && eps > 0.0) {
      rep.fitted_c = c;
      rep.fitted_eps = eps;
      break;
    }
  }
  for (size_t i = 0; i < cfg.ns.size(); ++i)
    rep.rows.push_back({cfg.ns[i], sup[i],
                        rep.fitted_c > 0.0 ? data_tail(rep.fitted_c, cfg.ns[i]) : data_tail(1.0, cfg.ns[i])});
  return rep;
}

inline CsvTable tail_csv(const TailReport& rep) {
  CsvTable t;
  t.header = {"n", "sup_tail_hs", "data_tail_hs"};
  for (const auto& r : rep.rows)
    t.rows.push_back({format_int(r.n), format_double(r.sup_tail_hs), format_double(r.data_tail_hs)});
  return t;
}

// ---------------------------------------------------------------------------
// Conserved-quantity monitoring.

struct ConservationRow {
  double t = 0.0;
  double mass = 0.0, energy = 0.0, momentum = 0.0;
  double hs_norm = 0.0, fl_norm = 0.0;
  std::vector<double> tails;
};

struct ConservationConfig {
  double s = 0.45;
  double s1 = 1.0;
  double p = 3.0;
  std::vector<int> tail_ns{};
};

inline std::vector<ConservationRow> conservation_experiment(const Trajectory& traj,
                                                            const ConservationConfig& cfg) {
  if (traj.frames.empty()) throw precondition_error("conservation_experiment: empty trajectory");
  const double mu0 = traj.config.mu_mode.kind == MuMode::constant ? traj.config.mu_mode.mu0
                                                                  : mu(traj.frames.front());
  std::vector<ConservationRow> rows;
  rows.reserve(traj.frames.size());
  for (const SpectralState& f : traj.frames) {
    ConservationRow r;
    r.t = f.time;
    const ConservedTriple c = conserved(f, mu0);
    r.mass = c.mass;
    r.energy = c.energy;
    r.momentum = c.momentum;
    r.hs_norm = norm(f, NormSpec::hs(cfg.s));
    r.fl_norm = norm(f, NormSpec::fl(cfg.s1, cfg.p));
    for (int n : cfg.tail_ns) r.tails.push_back(norm(project(f, band_ge(n)), NormSpec::hs(cfg.s)));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline CsvTable simulate_csv(const std::string& run_id, const std::vector<ConservationRow>& rows) {
  CsvTable t;
  t.header = {"run_id", "t", "mass", "energy", "momentum", "hs_norm", "fl_norm"};
  for (const auto& r : rows)
    t.rows.push_back({run_id, format_double(r.t), format_double(r.mass), format_double(r.energy),
                      format_double(r.momentum), format_double(r.hs_norm), format_double(r.fl_norm)});
  return t;
}

inline CsvTable conserve_csv(const std::vector<ConservationRow>& rows,
                             const std::vector<int>& tail_ns) {
  CsvTable t;
  t.header = {"t", "mass", "energy", "momentum", "hs_norm", "fl_norm"};
  for (int n : tail_ns) t.header.push_back("tail_hs_" + std::to_string(n));
  for (const auto& r : rows) {
    std::vector<std::string> row{format_double(r.t),      format_double(r.mass),
                                 format_double(r.energy), format_double(r.momentum),
                                 format_double(r.hs_norm), format_double(r.fl_norm)};
    for (double v : r.tails) row.push_back(format_double(v));
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Windowed discrete X^{s,b} estimator.  A diagnostic on the (tau, xi) lattice
// of a recorded trajectory, not the continuum norm: Hann window in time,
// discrete time transform per mode, weight <tau + xi^2>^{2b}.
inline double xsb_norm_estimate(const Trajectory& traj, double s, double b) {
  const size_t K = traj.frames.size();
  if (K < 8) throw precondition_error("xsb_norm_estimate: need >= 8 frames");
  const double dt = traj.frame_dt();
  const int n = traj.frames.front().n_max;

  std::vector<double> window(K);
  for (size_t k = 0; k < K; ++k)
    window[k] = 0.5 * (1.0 - std::cos(two_pi * static_cast<double>(k) / static_cast<double>(K - 1)));

  const double dtau = two_pi / (static_cast<double>(K) * dt);
  double acc = 0.0;
  std::vector<cplx> sig(K), spec;
  for (int xi = -n; xi <= n; ++xi) {
    for (size_t k = 0; k < K; ++k) sig[k] = window[k] * traj.frames[k].at(xi);
    fft::forward(sig, spec);
    const double wx = bracket_pow(xi, 2.0 * s);
    for (size_t m = 0; m < K; ++m) {
      const long long ms = static_cast<long long>(m) <= static_cast<long long>(K) / 2
                               ? static_cast<long long>(m)
                               : static_cast<long long>(m) - static_cast<long long>(K);
      const double tau = dtau * static_cast<double>(ms);
      const double wt = bracket_pow(tau + static_cast<double>(xi) * xi, 2.0 * b);
      acc += wx * wt * std::norm(dt * spec[m]) * dtau / two_pi;
    }
  }
  return std::sqrt(acc);
}

}  // namespace dnls
