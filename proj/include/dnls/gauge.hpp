#pragma once

#include "evolution.hpp"

namespace dnls {

struct GaugeResult {
  SpectralState v_state;     // transformed field, reported at cutoff 3 n_max
  GridFunction phase_grid;   // samples of the full phase applied to u(. + 2 mu t)
  double truncation_tail = 0.0;  // L2 magnitude of grid content beyond 3 n_max
};

// Samples of G(x) = (1/2pi) int_0^{2pi} int_theta^x (|u(y)|^2 - mu) dy dtheta:
// the zero-mean primitive of |u|^2 - mu.  Spectrally, the xi != 0 coefficients
// of |u|^2 divided by (i xi).
inline GridFunction gauge_primitive(const SpectralState& u, double mu_value,
                                    int grid_size = 0) {
  if (std::abs(mu_value - mu(u)) > 1e-8)
    throw inconsistent_mu_error("gauge_primitive: mu does not match mu[u]");
  const int M = grid_size > 0 ? grid_size : cubic_grid_size(u.n_max);
  const GridFunction U = synthesize(u, M);
  GridFunction sq;
  sq.grid_size = M;
  sq.samples.resize(U.samples.size());
  for (size_t j = 0; j < sq.samples.size(); ++j) sq.samples[j] = std::norm(U.samples[j]);
  const int band = std::min(2 * u.n_max, (M - 1) / 2);
  const SpectralState b = analyze(sq, band);
  SpectralState g(band);
  for (int xi = -band; xi <= band; ++xi)
    g.at(xi) = xi == 0 ? cplx{0.0, 0.0} : b.at(xi) / cplx{0.0, static_cast<double>(xi)};
  return synthesize(g, M);
}

// v(x) = e^{i [G[u](t, x + 2 mu t) + mu^2 t]} u(t, x + 2 mu t).  The phase
// constant mu^2 t makes v satisfy i v_t + v_xx = i (|v|^2 v)_x identically for
// solutions of the full equation; the residual tests pin this down.
inline GaugeResult gauge_forward(const SpectralState& u, double mu_value) {
  if (std::abs(mu_value - mu(u)) > 1e-8)
    throw inconsistent_mu_error("gauge_forward: mu does not match mu[u]");
  const int n = u.n_max;
  const double t = u.time;
  const double shift = 2.0 * mu_value * t;

  SpectralState us = u;  // u(t, x + 2 mu t), exact spectral shift
  for (int xi = -n; xi <= n; ++xi) us.at(xi) *= std::polar(1.0, xi * shift);

  const int M = pow2_at_least(8 * n + 1);
  const GridFunction Us = synthesize(us, M);
  GridFunction phase = gauge_primitive(us, mu_value, M);
  const double ct = mu_value * mu_value * t;
  for (cplx& p : phase.samples) p += ct;

  GridFunction V;
  V.grid_size = M;
  V.samples.resize(Us.samples.size());
  for (size_t j = 0; j < V.samples.size(); ++j)
    V.samples[j] = std::polar(1.0, phase.samples[j].real()) * Us.samples[j];

  GaugeResult out;
  out.phase_grid = phase;
  const int band = std::min(3 * n, (M - 1) / 2);
  out.v_state = analyze(V, band, t);
  const GridFunction kept = synthesize(out.v_state, M);
  double tail2 = 0.0;
  for (size_t j = 0; j < V.samples.size(); ++j) tail2 += std::norm(V.samples[j] - kept.samples[j]);
  out.truncation_tail = std::sqrt(two_pi * tail2 / static_cast<double>(M));
  return out;
}

// Per-interior-frame H^0 norm of r = i v_t + v_xx - i (|v|^2 v)_x along a
// gauged trajectory; v_t by centered differences, spatial terms spectral.
inline std::vector<double> dnls_residual(const Trajectory& traj, const MuMode& mu_mode) {
  const size_t K = traj.frames.size();
  if (K < 3) throw precondition_error("dnls_residual: need at least 3 frames");
  const double dt = traj.frames[1].time - traj.frames[0].time;
  for (size_t k = 1; k < K; ++k) {
    const double d = traj.frames[k].time - traj.frames[k - 1].time;
    if (std::abs(d - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw precondition_error("dnls_residual: frames not uniformly spaced");
  }

  std::vector<SpectralState> v(K);
  for (size_t k = 0; k < K; ++k)
    v[k] = gauge_forward(traj.frames[k], mu_mode.resolve(traj.frames[k])).v_state;

  std::vector<double> out;
  out.reserve(K - 2);
  for (size_t k = 1; k + 1 < K; ++k) {
    const int nb = v[k].n_max;
    const int M = cubic_grid_size(nb);
    const GridFunction Vg = synthesize(v[k], M);
    GridFunction cubic;
    cubic.grid_size = M;
    cubic.samples.resize(Vg.samples.size());
    for (size_t j = 0; j < cubic.samples.size(); ++j)
      cubic.samples[j] = std::norm(Vg.samples[j]) * Vg.samples[j];
    const SpectralState q = analyze(cubic, nb);

    double acc = 0.0;
    const double inv2dt = 1.0 / (2.0 * dt);
    for (int xi = -nb; xi <= nb; ++xi) {
      const cplx vt = (v[k + 1].at(xi) - v[k - 1].at(xi)) * inv2dt;
      const cplx r = cplx{0.0, 1.0} * vt -
                     static_cast<double>(xi) * xi * v[k].at(xi) +
                     static_cast<double>(xi) * q.at(xi);
      acc += std::norm(r);
    }
    out.push_back(std::sqrt(acc));
  }
  return out;
}

}  // namespace dnls
