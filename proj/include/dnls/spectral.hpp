#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "core.hpp"
#include "fft.hpp"

namespace dnls {

// Fourier coefficients of u on the torus at one time instant.
// Convention, fixed project wide: u(x) = sum_xi c_xi e^{i xi x}, xi in [-n_max, n_max].
// u is complex valued; no Hermitian symmetry is assumed.
struct SpectralState {
  int n_max = 0;
  std::vector<cplx> coeffs;  // index xi + n_max
  double time = 0.0;

  SpectralState() = default;
  explicit SpectralState(int n, double t = 0.0)
      : n_max(n), coeffs(static_cast<size_t>(2 * n + 1)), time(t) {}

  cplx& at(int xi) { return coeffs[static_cast<size_t>(xi + n_max)]; }
  const cplx& at(int xi) const { return coeffs[static_cast<size_t>(xi + n_max)]; }

  bool finite() const {
    for (const cplx& c : coeffs)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
  }
};

inline SpectralState operator+(const SpectralState& a, const SpectralState& b) {
  SpectralState r = a;
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  return r;
}

inline SpectralState operator-(const SpectralState& a, const SpectralState& b) {
  SpectralState r = a;
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
  return r;
}

inline SpectralState operator*(cplx s, const SpectralState& a) {
  SpectralState r = a;
  for (cplx& c : r.coeffs) c *= s;
  return r;
}

// Physical-space samples at x_j = 2 pi j / grid_size.
struct GridFunction {
  std::vector<cplx> samples;
  int grid_size = 0;
};

struct NormSpec {
  enum Kind { sobolev, fourier_lebesgue } kind = sobolev;
  double s = 0.0;
  double p = 2.0;  // used only for fourier_lebesgue

  static NormSpec hs(double s) { return {sobolev, s, 2.0}; }
  static NormSpec fl(double s, double p) { return {fourier_lebesgue, s, p}; }
};

// Seeded data profile: |c_xi| = amplitude * <xi>^{-sigma} exactly, phases from
// a per-mode SplitMix64 stream so coefficients do not depend on n_max.
struct SpectralProfile {
  double sigma = 1.0;
  double amplitude = 0.1;
  std::uint64_t seed = 0;

  std::string describe() const {
    return "profile(sigma=" + std::to_string(sigma) + ",amp=" + std::to_string(amplitude) +
           ",seed=" + std::to_string(seed) + ")";
  }
};

struct Band {
  enum Kind { le, ge, gt } kind = le;
  int cut = 0;
};

inline Band band_le(int n) { return {Band::le, n}; }
inline Band band_ge(int n) { return {Band::ge, n}; }
inline Band band_gt(int n) { return {Band::gt, n}; }

inline int wrap_mode(int xi, int grid_size) {
  int k = xi % grid_size;
  return k < 0 ? k + grid_size : k;
}

inline GridFunction synthesize(const SpectralState& u, int grid_size) {
  if (grid_size < 2 * u.n_max + 1)
    throw cutoff_error("synthesize: grid_size " + std::to_string(grid_size) +
                       " < 2*n_max+1 = " + std::to_string(2 * u.n_max + 1));
  std::vector<cplx> spec(static_cast<size_t>(grid_size), cplx{0.0, 0.0});
  for (int xi = -u.n_max; xi <= u.n_max; ++xi)
    spec[static_cast<size_t>(wrap_mode(xi, grid_size))] = u.at(xi);
  GridFunction g;
  g.grid_size = grid_size;
  fft::backward(spec, g.samples);
  return g;
}

inline SpectralState analyze(const GridFunction& g, int n_max, double time = 0.0) {
  if (g.grid_size < 2 * n_max + 1)
    throw cutoff_error("analyze: grid_size " + std::to_string(g.grid_size) +
                       " < 2*n_max+1 = " + std::to_string(2 * n_max + 1));
  std::vector<cplx> spec;
  fft::forward(g.samples, spec);
  SpectralState u(n_max, time);
  const double inv = 1.0 / static_cast<double>(g.grid_size);
  for (int xi = -n_max; xi <= n_max; ++xi)
    u.at(xi) = inv * spec[static_cast<size_t>(wrap_mode(xi, g.grid_size))];
  return u;
}

inline double norm(const SpectralState& u, const NormSpec& spec) {
  if (spec.kind == NormSpec::sobolev) {
    double acc = 0.0;
    for (int xi = -u.n_max; xi <= u.n_max; ++xi)
      acc += bracket_pow(xi, 2.0 * spec.s) * std::norm(u.at(xi));
    return std::sqrt(acc);
  }
  if (spec.p < 1.0) throw std::domain_error("norm: p < 1");
  if (std::isinf(spec.p)) {
    double m = 0.0;
    for (int xi = -u.n_max; xi <= u.n_max; ++xi)
      m = std::max(m, bracket_pow(xi, spec.s) * std::abs(u.at(xi)));
    return m;
  }
  double acc = 0.0;
  for (int xi = -u.n_max; xi <= u.n_max; ++xi)
    acc += std::pow(bracket_pow(xi, spec.s) * std::abs(u.at(xi)), spec.p);
  return std::pow(acc, 1.0 / spec.p);
}

inline SpectralState project(const SpectralState& u, Band band) {
  if (band.cut < 0) throw precondition_error("project: negative band cut");
  SpectralState r = u;
  for (int xi = -u.n_max; xi <= u.n_max; ++xi) {
    const int a = std::abs(xi);
    const bool keep = band.kind == Band::le ? a <= band.cut
                    : band.kind == Band::ge ? a >= band.cut
                                            : a > band.cut;
    if (!keep) r.at(xi) = cplx{0.0, 0.0};
  }
  return r;
}

inline SpectralState derivative(const SpectralState& u) {
  SpectralState r = u;
  for (int xi = -u.n_max; xi <= u.n_max; ++xi) r.at(xi) *= cplx{0.0, static_cast<double>(xi)};
  return r;
}

// M[u] = int |u|^2 dx = 2 pi sum |c_xi|^2
inline double mass(const SpectralState& u) {
  double acc = 0.0;
  for (const cplx& c : u.coeffs) acc += std::norm(c);
  return two_pi * acc;
}

// Phase of mode xi under seed: one SplitMix64 draw from a per-mode stream.
inline double mode_phase(std::uint64_t seed, int xi) {
  std::uint64_t state =
      seed + static_cast<std::uint64_t>(static_cast<std::int64_t>(xi) + (1ll << 32)) *
                 0x9E3779B97F4A7C15ull;
  return two_pi * uniform01(splitmix64(state));
}

inline SpectralState random_state(const SpectralProfile& profile, int n_max) {
  if (n_max < 1) throw precondition_error("random_state: n_max < 1");
  SpectralState u(n_max);
  for (int xi = -n_max; xi <= n_max; ++xi) {
    const double phi = mode_phase(profile.seed, xi);
    const double r = profile.amplitude * bracket_pow(xi, -profile.sigma);
    u.at(xi) = cplx{r * std::cos(phi), r * std::sin(phi)};
  }
  return u;
}

// Crop or zero-pad to a new cutoff; coefficients are preserved on the overlap.
inline SpectralState with_n_max(const SpectralState& u, int n_max) {
  SpectralState r(n_max, u.time);
  const int m = std::min(n_max, u.n_max);
  for (int xi = -m; xi <= m; ++xi) r.at(xi) = u.at(xi);
  return r;
}

inline bool supported_within(const SpectralState& u, int n) {
  for (int xi = -u.n_max; xi <= u.n_max; ++xi)
    if (std::abs(xi) > n && u.at(xi) != cplx{0.0, 0.0}) return false;
  return true;
}

}  // namespace dnls
