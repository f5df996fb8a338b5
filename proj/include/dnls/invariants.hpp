#pragma once

#include "nonlinearity.hpp"

namespace dnls {

struct ConservedTriple {
  double mass = 0.0;
  double energy = 0.0;
  double momentum = 0.0;
};

// M = int |u|^2,  E = int (|u_x|^2 - Im(|u|^2 u conj(u)_x)/2 + mu |u|^4 / 2),
// P = int (Im(conj(u) u_x) + |u|^4 / 2); quartic integrands on alias-free grids.
// The sign of the mu-quartic term in E is the one the flow actually conserves
// (drift at the integrator's dt^4 level for resolved data; see the tests).
inline ConservedTriple conserved(const SpectralState& u, double mu_value) {
  ConservedTriple out;
  out.mass = mass(u);

  double e_lin = 0.0, p_lin = 0.0;
  for (int xi = -u.n_max; xi <= u.n_max; ++xi) {
    const double a2 = std::norm(u.at(xi));
    e_lin += static_cast<double>(xi) * xi * a2;
    p_lin += static_cast<double>(xi) * a2;
  }

  const int M = cubic_grid_size(u.n_max);
  const GridFunction U = synthesize(u, M);
  const GridFunction D = synthesize(derivative(u), M);
  double quartic = 0.0, cross = 0.0;
  for (size_t j = 0; j < U.samples.size(); ++j) {
    const double a2 = std::norm(U.samples[j]);
    quartic += a2 * a2;
    cross += a2 * (U.samples[j] * std::conj(D.samples[j])).imag();
  }
  quartic /= static_cast<double>(M);
  cross /= static_cast<double>(M);

  out.energy = two_pi * (e_lin - 0.5 * cross + 0.5 * mu_value * quartic);
  out.momentum = two_pi * (p_lin + 0.5 * quartic);
  return out;
}

struct GrowthReport {
  double linear_part = 0.0;
  double n12_part = 0.0;
  double n22_internal_part = 0.0;
  double n11_part = 0.0;
  double n2_part = 0.0;
  double total = 0.0;
};

namespace detail {

// Contribution of a right-hand-side term T to d/dt ||u||_{H^s}^2:
// 2 Re sum <xi>^{2s} conj(c_xi) (-i T_xi) = 2 sum <xi>^{2s} Im(conj(c_xi) T_xi)
inline double growth_pairing(const SpectralState& u, const SpectralState& t_hat, double s) {
  double acc = 0.0;
  for (int xi = -u.n_max; xi <= u.n_max; ++xi)
    acc += bracket_pow(xi, 2.0 * s) * (std::conj(u.at(xi)) * t_hat.at(xi)).imag();
  return 2.0 * acc;
}

}  // namespace detail

// The named contributions to d/dt ||u||_{H^s}^2.  The linear part, the
// resonant N12 part and the quartic-mean part of N22 cancel identically;
// the total is carried by N11 and N2 alone.
inline GrowthReport hs_growth_rate(const SpectralState& u, double s, const MuMode& mu_mode) {
  GrowthReport rep;

  double lin = 0.0, res = 0.0;
  for (int xi = -u.n_max; xi <= u.n_max; ++xi) {
    const double w = bracket_pow(xi, 2.0 * s);
    const cplx c = u.at(xi);
    lin += w * (std::conj(c) * (-static_cast<double>(xi) * xi * c)).imag();
    res += w * (static_cast<double>(xi) * std::norm(c) * (std::conj(c) * c).imag());
  }
  rep.linear_part = 2.0 * lin;
  rep.n12_part = 2.0 * res;

  const int M = cubic_grid_size(u.n_max);
  const GridFunction U = synthesize(u, M);
  const double k = detail::quartic_mean(U.samples);
  double internal = 0.0;
  for (int xi = -u.n_max; xi <= u.n_max; ++xi) {
    const cplx c = u.at(xi);
    internal += bracket_pow(xi, 2.0 * s) * k * (std::conj(c) * c).imag();
  }
  rep.n22_internal_part = 2.0 * internal;

  rep.n11_part = detail::growth_pairing(u, term(u, Term::n11, mu_mode), s);
  rep.n2_part = detail::growth_pairing(u, term(u, Term::n2, mu_mode), s);
  rep.total = rep.n11_part + rep.n2_part;
  return rep;
}

// m4(xi) = xi1 <xi3>^{2s} + xi2 <xi4>^{2s} + xi3 <xi1>^{2s} + xi4 <xi2>^{2s}
inline double m4_kernel(const FrequencyQuad& q, double s) {
  if (!q.on_gamma4()) throw precondition_error("m4_kernel: quad not on Gamma4");
  const double e = 2.0 * s;
  return static_cast<double>(q.xi[0]) * bracket_pow(static_cast<double>(q.xi[2]), e) +
         static_cast<double>(q.xi[1]) * bracket_pow(static_cast<double>(q.xi[3]), e) +
         static_cast<double>(q.xi[2]) * bracket_pow(static_cast<double>(q.xi[0]), e) +
         static_cast<double>(q.xi[3]) * bracket_pow(static_cast<double>(q.xi[1]), e);
}

// Frozen scalar of the symmetrized four-linear form.  Fitted once on a
// calibration set (see tests), equal to -i/2 in this coefficient convention.
inline constexpr cplx modified_energy_constant{0.0, -0.5};

// c * sum_{Gamma4, xi12 xi14 != 0} m4(xi) c1 conj(c_{-2}) c3 conj(c_{-4});
// equals hs_growth_rate(...).n11_part with the frozen constant.
inline double symmetrized_growth(const SpectralState& u, double s) {
  const int n = u.n_max;
  if (n > 64) throw resource_guard_error("symmetrized_growth: n_max > 64");

  std::vector<double> w(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) w[static_cast<size_t>(k)] = bracket_pow(k, 2.0 * s);
  const auto wk = [&](int k) { return w[static_cast<size_t>(std::abs(k))]; };

  cplx acc{0.0, 0.0};
  for (int x1 = -n; x1 <= n; ++x1)
    for (int x2 = -n; x2 <= n; ++x2)
      for (int x3 = -n; x3 <= n; ++x3) {
        const int x4 = -(x1 + x2 + x3);
        if (x4 < -n || x4 > n) continue;
        const long long x12 = x1 + x2, x14 = x1 + x4;
        if (x12 * x14 == 0) continue;
        const double m4 = x1 * wk(x3) + x2 * wk(x4) + x3 * wk(x1) + x4 * wk(x2);
        acc += m4 * u.at(x1) * std::conj(u.at(-x2)) * u.at(x3) * std::conj(u.at(-x4));
      }
  return (modified_energy_constant * acc).real();
}

}  // namespace dnls
