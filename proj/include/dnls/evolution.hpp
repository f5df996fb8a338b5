#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nonlinearity.hpp"

namespace dnls {

enum class Scheme { ifrk4 };

struct SimConfig {
  int n_max = 0;
  double dt = 1e-3;
  double t_end = 0.0;
  int record_stride = 1;
  MuMode mu_mode{};
  std::optional<int> truncation{};  // absent: full RHS at n_max
  Scheme scheme = Scheme::ifrk4;

  void validate() const {
    if (n_max < 0) throw precondition_error("SimConfig: n_max < 0");
    if (dt <= 0.0) throw precondition_error("SimConfig: dt <= 0");
    if (t_end < 0.0) throw precondition_error("SimConfig: t_end < 0");
    if (t_end > 0.0 && dt > t_end * (1.0 + 1e-12))
      throw precondition_error("SimConfig: dt > t_end");
    if (record_stride < 1) throw precondition_error("SimConfig: record_stride < 1");
    if (truncation && (*truncation < 0 || *truncation > n_max))
      throw precondition_error("SimConfig: truncation outside [0, n_max]");
  }
};

// Stable desk-scale default: the linear part is exact under the integrating
// factor; the derivative nonlinearity imposes a transport-type restriction.
inline double default_dt(int n_max, double mu_value) {
  return std::min(1e-3, 0.1 / (n_max * (1.0 + mu_value) + 1.0));
}

struct Trajectory {
  std::vector<SpectralState> frames;
  SimConfig config{};
  std::string provenance{};
  std::uint64_t seed = 0;

  double frame_dt() const { return config.dt * config.record_stride; }
};

namespace detail {

// c_xi -> e^{-i xi^2 tau} c_xi
inline SpectralState free_phase(const SpectralState& u, double tau) {
  SpectralState r = u;
  for (int xi = -u.n_max; xi <= u.n_max; ++xi)
    r.at(xi) *= std::polar(1.0, -static_cast<double>(xi) * xi * tau);
  return r;
}

// -i (P_{<=N}) N[u]; the nonlinear part of du/dt
inline SpectralState nonlinear_rhs(const SpectralState& u, const SimConfig& cfg) {
  if (cfg.truncation && *cfg.truncation < u.n_max) {
    const SpectralState cropped = with_n_max(u, *cfg.truncation);
    return with_n_max(cplx{0.0, -1.0} * term(cropped, Term::full, cfg.mu_mode), u.n_max);
  }
  return cplx{0.0, -1.0} * term(u, Term::full, cfg.mu_mode);
}

}  // namespace detail

// One integrating-factor RK4 step: exact linear phase e^{-i xi^2 dt}, classical
// RK4 on the nonlinearity in the interaction picture anchored at the step start.
inline SpectralState step(const SpectralState& u, double dt, const SimConfig& cfg) {
  if (dt <= 0.0) throw precondition_error("step: dt <= 0");
  using detail::free_phase;
  using detail::nonlinear_rhs;
  const double h = dt;
  const SpectralState k1 = nonlinear_rhs(u, cfg);
  const SpectralState k2 =
      free_phase(nonlinear_rhs(free_phase(u + (0.5 * h) * k1, 0.5 * h), cfg), -0.5 * h);
  const SpectralState k3 =
      free_phase(nonlinear_rhs(free_phase(u + (0.5 * h) * k2, 0.5 * h), cfg), -0.5 * h);
  const SpectralState k4 = free_phase(nonlinear_rhs(free_phase(u + h * k3, h), cfg), -h);
  SpectralState r = free_phase(u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), h);
  r.time = u.time + dt;
  if (!r.finite()) throw divergence_error(r.time);
  return r;
}

inline Trajectory evolve(const SpectralState& u0, const SimConfig& cfg) {
  cfg.validate();
  if (u0.n_max != cfg.n_max) throw precondition_error("evolve: state n_max != config n_max");
  if (cfg.truncation && !supported_within(u0, *cfg.truncation))
    throw precondition_error("evolve: initial data outside truncation support");

  Trajectory traj;
  traj.config = cfg;
  traj.frames.push_back(u0);
  if (cfg.t_end == 0.0) return traj;

  const double t0 = u0.time;
  const double n_real = cfg.t_end / cfg.dt;
  long long n_steps = static_cast<long long>(std::floor(n_real + 1e-9));
  double rem = cfg.t_end - static_cast<double>(n_steps) * cfg.dt;
  if (rem < 1e-12 * cfg.t_end) rem = 0.0;

  SpectralState u = u0;
  for (long long i = 1; i <= n_steps; ++i) {
    u = step(u, cfg.dt, cfg);
    u.time = t0 + static_cast<double>(i) * cfg.dt;  // exact frame stamps
    if (i % cfg.record_stride == 0) traj.frames.push_back(u);
  }
  if (rem > 0.0) {
    u = step(u, rem, cfg);
    u.time = t0 + cfg.t_end;
    traj.frames.push_back(u);
  }
  return traj;
}

// w = e^{-i t d_x^2} u at the state's own time: w_xi = e^{+i xi^2 t} c_xi.
// A free trajectory maps to a constant w.
inline SpectralState to_interaction(const SpectralState& u) {
  SpectralState r = u;
  for (int xi = -u.n_max; xi <= u.n_max; ++xi)
    r.at(xi) *= std::polar(1.0, static_cast<double>(xi) * xi * u.time);
  return r;
}

// |c(xi1) conj(c(-xi2)) c(xi3) conj(c(-xi4)) - e^{-2 i xi12 xi14 t} (same in w)|.
// The phase follows from expanding the four free-evolution factors; on Gamma4
// it equals e^{+2 i xi14 xi34 t}.
inline double quad_phase_check(const SpectralState& u, const FrequencyQuad& q) {
  if (!q.on_gamma4()) throw precondition_error("quad_phase_check: quad not on Gamma4");
  for (long long x : q.xi)
    if (std::llabs(x) > u.n_max) throw precondition_error("quad_phase_check: mode beyond n_max");
  const auto c = [&](long long xi) { return u.at(static_cast<int>(xi)); };
  const SpectralState w = to_interaction(u);
  const auto wc = [&](long long xi) { return w.at(static_cast<int>(xi)); };
  const cplx lhs =
      c(q.xi[0]) * std::conj(c(-q.xi[1])) * c(q.xi[2]) * std::conj(c(-q.xi[3]));
  const cplx rhs =
      wc(q.xi[0]) * std::conj(wc(-q.xi[1])) * wc(q.xi[2]) * std::conj(wc(-q.xi[3]));
  const cplx phase = std::polar(1.0, -2.0 * static_cast<double>(q.xi12() * q.xi14()) * u.time);
  return std::abs(lhs - phase * rhs);
}

}  // namespace dnls
