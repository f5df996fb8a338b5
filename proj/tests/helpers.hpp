#pragma once

#include <dnls/dnls.hpp>

#include <catch2/catch_amalgamated.hpp>

namespace testutil {

using dnls::cplx;
using dnls::SpectralState;

// O(M n) direct summation; the reference transform path.
inline std::vector<cplx> direct_synthesize(const SpectralState& u, int M) {
  std::vector<cplx> out(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double x = dnls::two_pi * j / M;
    cplx acc{0.0, 0.0};
    for (int xi = -u.n_max; xi <= u.n_max; ++xi)
      acc += u.at(xi) * std::polar(1.0, xi * x);
    out[static_cast<size_t>(j)] = acc;
  }
  return out;
}

inline SpectralState direct_analyze(const std::vector<cplx>& samples, int n_max) {
  const int M = static_cast<int>(samples.size());
  SpectralState u(n_max);
  for (int xi = -n_max; xi <= n_max; ++xi) {
    cplx acc{0.0, 0.0};
    for (int j = 0; j < M; ++j)
      acc += samples[static_cast<size_t>(j)] * std::polar(1.0, -xi * dnls::two_pi * j / M);
    u.at(xi) = acc / static_cast<double>(M);
  }
  return u;
}

inline double max_coeff_diff(const SpectralState& a, const SpectralState& b) {
  REQUIRE(a.n_max == b.n_max);
  double m = 0.0;
  for (size_t i = 0; i < a.coeffs.size(); ++i) m = std::max(m, std::abs(a.coeffs[i] - b.coeffs[i]));
  return m;
}

inline double max_abs(const SpectralState& a) {
  double m = 0.0;
  for (const cplx& c : a.coeffs) m = std::max(m, std::abs(c));
  return m;
}

// Periodic trapezoid rule of f over [0, 2pi): equals 2 pi * mean on the grid.
template <typename F>
inline double trapezoid_quadrature(int M, F f) {
  double acc = 0.0;
  for (int j = 0; j < M; ++j) acc += f(dnls::two_pi * j / M);
  return dnls::two_pi * acc / M;
}

// u(x) and u_x(x) by direct summation, for pointwise quadrature oracles.
inline cplx eval_u(const SpectralState& u, double x) {
  cplx acc{0.0, 0.0};
  for (int xi = -u.n_max; xi <= u.n_max; ++xi) acc += u.at(xi) * std::polar(1.0, xi * x);
  return acc;
}

inline cplx eval_ux(const SpectralState& u, double x) {
  cplx acc{0.0, 0.0};
  for (int xi = -u.n_max; xi <= u.n_max; ++xi)
    acc += cplx{0.0, static_cast<double>(xi)} * u.at(xi) * std::polar(1.0, xi * x);
  return acc;
}

inline SpectralState plane_wave(cplx amplitude, int xi0, int n_max, double time = 0.0) {
  SpectralState u(n_max, time);
  u.at(xi0) = amplitude;
  return u;
}

inline SpectralState seeded_state(std::uint64_t seed, int n_max, double amp = 0.3,
                                  double sigma = 1.5) {
  return dnls::random_state({sigma, amp, seed}, n_max);
}

}  // namespace testutil
