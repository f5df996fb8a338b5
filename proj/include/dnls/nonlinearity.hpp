#pragma once

#include <cmath>

#include "spectral.hpp"

namespace dnls {

// Alias-free grid sizes, rounded up to a power of two.  A product of degree d
// of fields supported in |xi| <= n is exact on |xi| <= n when M >= (d+1)n + 1.
inline int pow2_at_least(int m) {
  int n = 16;
  while (n < m) n <<= 1;
  return n;
}
inline int cubic_grid_size(int n_max) { return pow2_at_least(4 * n_max + 1); }
inline int quintic_grid_size(int n_max) { return pow2_at_least(6 * n_max + 1); }

// mu[u] = (1/2pi) int |u|^2 = sum |c_xi|^2
inline double mu(const SpectralState& u) {
  double acc = 0.0;
  for (const cplx& c : u.coeffs) acc += std::norm(c);
  return acc;
}

struct MuMode {
  enum Kind { constant, instantaneous } kind = constant;
  double mu0 = 0.0;

  static MuMode constant_mu(double value) { return {constant, value}; }
  static MuMode constant_from(const SpectralState& u) { return {constant, mu(u)}; }
  static MuMode instant() { return {instantaneous, 0.0}; }

  double resolve(const SpectralState& u) const { return kind == constant ? mu0 : mu(u); }
};

namespace detail {

// (1/2pi) int 2 Im(u d_x conj(u)) dtheta = -2 sum xi |c_xi|^2
inline double momentum_mean(const SpectralState& u) {
  double acc = 0.0;
  for (int xi = -u.n_max; xi <= u.n_max; ++xi) acc += xi * std::norm(u.at(xi));
  return -2.0 * acc;
}

// (1/4pi) int |u|^4 dtheta, from alias-free samples
inline double quartic_mean(const std::vector<cplx>& samples) {
  double acc = 0.0;
  for (const cplx& v : samples) {
    const double a2 = std::norm(v);
    acc += a2 * a2;
  }
  return 0.5 * acc / static_cast<double>(samples.size());
}

}  // namespace detail

// psi[u] = (1/2pi) int (2 Im(u d_x conj(u)) - |u|^4/2) dtheta
inline double psi(const SpectralState& u) {
  const GridFunction g = synthesize(u, cubic_grid_size(u.n_max));
  return detail::momentum_mean(u) - detail::quartic_mean(g.samples);
}

enum class Term { n1, n11, n12, n21, n22, n2, full };

// Selected term of N[u] = -i u^2 d_x conj(u) - |u|^4 u / 2 + mu |u|^2 u - psi[u] u,
// in the resonant decomposition N = N11 + N12 + N21 + N22:
//   (N12)_xi = xi |c_xi|^2 c_xi
//   N11 = N1 - N12,  N1 = -i u^2 d_x conj(u) - ((1/2pi) int 2 Im(u d_x conj(u))) u
//   N21 = mu |u|^2 u
//   N22 = -|u|^4 u / 2 + ((1/4pi) int |u|^4) u
// Products are evaluated on alias-free grids and truncated back to n_max.
inline SpectralState term(const SpectralState& u, Term which, const MuMode& mu_mode) {
  const int n = u.n_max;
  switch (which) {
    case Term::n12: {
      SpectralState r(n, u.time);
      for (int xi = -n; xi <= n; ++xi) r.at(xi) = static_cast<double>(xi) * std::norm(u.at(xi)) * u.at(xi);
      return r;
    }
    case Term::n1: {
      const int M = cubic_grid_size(n);
      const GridFunction U = synthesize(u, M);
      const GridFunction D = synthesize(derivative(u), M);
      GridFunction W;
      W.grid_size = M;
      W.samples.resize(U.samples.size());
      for (size_t j = 0; j < W.samples.size(); ++j)
        W.samples[j] = cplx{0.0, -1.0} * U.samples[j] * U.samples[j] * std::conj(D.samples[j]);
      SpectralState r = analyze(W, n, u.time);
      const double m = detail::momentum_mean(u);
      for (int xi = -n; xi <= n; ++xi) r.at(xi) -= m * u.at(xi);
      return r;
    }
    case Term::n11:
      return term(u, Term::n1, mu_mode) - term(u, Term::n12, mu_mode);
    case Term::n21: {
      const double m = mu_mode.resolve(u);
      const int M = cubic_grid_size(n);
      const GridFunction U = synthesize(u, M);
      GridFunction W;
      W.grid_size = M;
      W.samples.resize(U.samples.size());
      for (size_t j = 0; j < W.samples.size(); ++j)
        W.samples[j] = m * std::norm(U.samples[j]) * U.samples[j];
      return analyze(W, n, u.time);
    }
    case Term::n22: {
      const int M = quintic_grid_size(n);
      const GridFunction U = synthesize(u, M);
      GridFunction W;
      W.grid_size = M;
      W.samples.resize(U.samples.size());
      for (size_t j = 0; j < W.samples.size(); ++j) {
        const double a2 = std::norm(U.samples[j]);
        W.samples[j] = -0.5 * a2 * a2 * U.samples[j];
      }
      SpectralState r = analyze(W, n, u.time);
      const double k = detail::quartic_mean(U.samples);
      for (int xi = -n; xi <= n; ++xi) r.at(xi) += k * u.at(xi);
      return r;
    }
    case Term::n2: {
      const double m = mu_mode.resolve(u);
      const int M = quintic_grid_size(n);
      const GridFunction U = synthesize(u, M);
      GridFunction W;
      W.grid_size = M;
      W.samples.resize(U.samples.size());
      for (size_t j = 0; j < W.samples.size(); ++j) {
        const double a2 = std::norm(U.samples[j]);
        W.samples[j] = (-0.5 * a2 * a2 + m * a2) * U.samples[j];
      }
      SpectralState r = analyze(W, n, u.time);
      const double k = detail::quartic_mean(U.samples);
      for (int xi = -n; xi <= n; ++xi) r.at(xi) += k * u.at(xi);
      return r;
    }
    case Term::full: {
      const double m = mu_mode.resolve(u);
      const int M = quintic_grid_size(n);
      const GridFunction U = synthesize(u, M);
      const GridFunction D = synthesize(derivative(u), M);
      GridFunction W;
      W.grid_size = M;
      W.samples.resize(U.samples.size());
      for (size_t j = 0; j < W.samples.size(); ++j) {
        const double a2 = std::norm(U.samples[j]);
        W.samples[j] = cplx{0.0, -1.0} * U.samples[j] * U.samples[j] * std::conj(D.samples[j]) +
                       (-0.5 * a2 * a2 + m * a2) * U.samples[j];
      }
      SpectralState r = analyze(W, n, u.time);
      const double psi_val = detail::momentum_mean(u) - detail::quartic_mean(U.samples);
      for (int xi = -n; xi <= n; ++xi) r.at(xi) -= psi_val * u.at(xi);
      return r;
    }
  }
  throw precondition_error("term: bad selector");
}

// du/dt for the full equation: (du/dt)_xi = -i xi^2 c_xi - i (N[u])_xi
inline SpectralState rhs_full(const SpectralState& u, const MuMode& mu_mode) {
  SpectralState r = term(u, Term::full, mu_mode);
  for (int xi = -u.n_max; xi <= u.n_max; ++xi)
    r.at(xi) = cplx{0.0, -1.0} * (static_cast<double>(xi) * xi * u.at(xi) + r.at(xi));
  return r;
}

// du^N/dt for the Galerkin-truncated system: nonlinearity projected to |xi| <= N.
inline SpectralState rhs_truncated(const SpectralState& u, int N, const MuMode& mu_mode) {
  if (N < 0 || N > u.n_max) throw precondition_error("rhs_truncated: bad cutoff");
  if (!supported_within(u, N))
    throw precondition_error("rhs_truncated: state has support outside |xi| <= N");
  const SpectralState cropped = with_n_max(u, N);
  return with_n_max(rhs_full(cropped, mu_mode), u.n_max);
}

// Direct triple summation of the nonresonant term; O(n_max^3) reference path.
inline SpectralState n11_direct_oracle(const SpectralState& u) {
  const int n = u.n_max;
  if (n > 64) throw resource_guard_error("n11_direct_oracle: n_max > 64");
  SpectralState r(n, u.time);
  for (int xi = -n; xi <= n; ++xi) {
    cplx acc{0.0, 0.0};
    for (int x1 = -n; x1 <= n; ++x1)
      for (int x3 = -n; x3 <= n; ++x3) {
        if ((x1 - xi) == 0 || (x3 - xi) == 0) continue;
        const int x2 = xi - x1 - x3;
        if (x2 < -n || x2 > n) continue;
        acc += static_cast<double>(x2) * u.at(x1) * std::conj(u.at(-x2)) * u.at(x3);
      }
    r.at(xi) = acc;
  }
  return r;
}

enum class ResonanceClass { nonresonant, res_pair_13, res_pair_11, overlap };

inline ResonanceClass resonance_classify(long long xi1, long long xi2, long long xi3,
                                         long long xi) {
  if (xi1 + xi2 + xi3 != xi) throw precondition_error("resonance_classify: xi1+xi2+xi3 != xi");
  if (xi1 == xi && xi3 == xi && xi2 == -xi) return ResonanceClass::overlap;
  if (xi3 == xi && xi1 + xi2 == 0) return ResonanceClass::res_pair_13;
  if (xi1 == xi && xi2 + xi3 == 0) return ResonanceClass::res_pair_11;
  return ResonanceClass::nonresonant;
}

}  // namespace dnls
