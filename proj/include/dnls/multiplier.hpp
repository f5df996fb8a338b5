#pragma once

#include <cstdlib>

#include "invariants.hpp"

namespace dnls {

// The lemma's implicit constants, resolved with one fixed factor:
// a << b  <=>  factor*a <= b,   a <~ b  <=>  a <= factor*b.
inline constexpr double scan_threshold_factor = 8.0;

// M4 = m4 / (xi14 xi34) on Gamma4 away from the resonant set xi14 xi34 = 0.
inline double big_m4(const FrequencyQuad& q, double s) {
  if (!q.on_gamma4()) throw precondition_error("big_m4: quad not on Gamma4");
  const long long denom = q.xi14() * q.xi34();
  if (denom == 0) throw std::domain_error("big_m4: resonant quad, xi14*xi34 = 0");
  return m4_kernel(q, s) / static_cast<double>(denom);
}

enum class BoundCase { case_i, case_ii, case_iii, excluded };

namespace detail {

struct QuadMagnitudes {
  std::array<long long, 4> sorted{};  // |xi| descending: N(1) >= N(2) >= N(3) >= N(4)
  long long a14 = 0, a34 = 0;
};

inline QuadMagnitudes magnitudes(const FrequencyQuad& q) {
  QuadMagnitudes m;
  for (int j = 0; j < 4; ++j) m.sorted[static_cast<size_t>(j)] = std::llabs(q.xi[static_cast<size_t>(j)]);
  std::sort(m.sorted.begin(), m.sorted.end(), std::greater<>());
  m.a14 = std::llabs(q.xi14());
  m.a34 = std::llabs(q.xi34());
  return m;
}

}  // namespace detail

// N(1) <~ min{|xi14|,|xi34|}  or  N(1) >> max{|xi14|,|xi34|}
inline bool case_i_hypothesis(const FrequencyQuad& q, double factor = scan_threshold_factor) {
  const auto m = detail::magnitudes(q);
  const double n1 = static_cast<double>(m.sorted[0]);
  const double lo = static_cast<double>(std::min(m.a14, m.a34));
  const double hi = static_cast<double>(std::max(m.a14, m.a34));
  return n1 <= factor * lo || n1 >= factor * hi;
}

// max{|xi14|,|xi34|} >~ N(1) >> min{|xi14|,|xi34|}
inline bool case_ii_hypothesis(const FrequencyQuad& q, double factor = scan_threshold_factor) {
  const auto m = detail::magnitudes(q);
  const double n1 = static_cast<double>(m.sorted[0]);
  const double lo = static_cast<double>(std::min(m.a14, m.a34));
  const double hi = static_cast<double>(std::max(m.a14, m.a34));
  return n1 <= factor * hi && n1 >= factor * lo;
}

// The odd/even pairing: {xi1,xi3} carry N(1) while {xi2,xi4} carry N(3),N(4),
// or vice versa, with N(1) >> N(3).
inline bool case_iii_hypothesis(const FrequencyQuad& q, double factor = scan_threshold_factor) {
  const auto m = detail::magnitudes(q);
  const long long a1 = std::llabs(q.xi[0]), a2 = std::llabs(q.xi[1]);
  const long long a3 = std::llabs(q.xi[2]), a4 = std::llabs(q.xi[3]);
  const bool pair_odd = std::max(a1, a3) == m.sorted[0] && std::max(a2, a4) == m.sorted[2] &&
                        std::min(a2, a4) == m.sorted[3];
  const bool pair_even = std::max(a2, a4) == m.sorted[0] && std::max(a1, a3) == m.sorted[2] &&
                         std::min(a1, a3) == m.sorted[3];
  const bool gap = static_cast<double>(m.sorted[0]) >= factor * static_cast<double>(m.sorted[2]);
  return (pair_odd || pair_even) && gap;
}

// First matching case wins; the paper's hypotheses overlap.
inline BoundCase classify_case(const FrequencyQuad& q, double factor = scan_threshold_factor) {
  if (!q.on_gamma4()) throw precondition_error("classify_case: quad not on Gamma4");
  if (q.xi14() * q.xi34() == 0)
    throw std::domain_error("classify_case: resonant quad, xi14*xi34 = 0");
  if (case_i_hypothesis(q, factor)) return BoundCase::case_i;
  if (case_ii_hypothesis(q, factor)) return BoundCase::case_ii;
  if (case_iii_hypothesis(q, factor)) return BoundCase::case_iii;
  return BoundCase::excluded;
}

struct CaseStat {
  double max_ratio = 0.0;
  FrequencyQuad witness{};
  long long count = 0;
};

struct ScanReport {
  long long radius = 0;
  double s = 0.0;
  double threshold_factor = scan_threshold_factor;
  // Per-hypothesis suprema: the lemma's bounds each hold on their full
  // hypothesis region, and the regions overlap, so every bound is tested over
  // every quad satisfying its hypothesis (not only the precedence winner).
  CaseStat case_i, case_ii, case_iii;
  // Precedence classification tallies; classified + excluded == total.
  long long classified_i = 0, classified_ii = 0, classified_iii = 0;
  long long excluded = 0;
  long long total = 0;  // admissible quads (xi14 xi34 != 0) enumerated
};

// |M4| against the case bound over all quads with |xi_j| <= radius.
// Case bounds: <N(1)>^{2s-1}, <N(3)>^{2s-1}, <N(3)><N(1)>^{2s-2}.
inline ScanReport bound_ratio_scan(int radius, double s,
                                   double factor = scan_threshold_factor) {
  if (radius < 1 || radius > 256) throw resource_guard_error("bound_ratio_scan: radius outside [1,256]");
  ScanReport rep;
  rep.radius = radius;
  rep.s = s;
  rep.threshold_factor = factor;

  const int r = radius;
  std::vector<double> w2s(static_cast<size_t>(r) + 1), wm1(static_cast<size_t>(r) + 1),
      wm2(static_cast<size_t>(r) + 1);
  for (int k = 0; k <= r; ++k) {
    w2s[static_cast<size_t>(k)] = bracket_pow(k, 2.0 * s);
    wm1[static_cast<size_t>(k)] = bracket_pow(k, 2.0 * s - 1.0);
    wm2[static_cast<size_t>(k)] = bracket_pow(k, 2.0 * s - 2.0);
  }
  const auto w = [&](long long k) { return w2s[static_cast<size_t>(std::llabs(k))]; };

  const auto update = [](CaseStat& st, double ratio, const FrequencyQuad& q) {
    ++st.count;
    if (ratio > st.max_ratio || (ratio == st.max_ratio && q < st.witness)) {
      st.max_ratio = ratio;
      st.witness = q;
    }
  };

  for (long long x1 = -r; x1 <= r; ++x1)
    for (long long x2 = -r; x2 <= r; ++x2)
      for (long long x3 = -r; x3 <= r; ++x3) {
        const long long x4 = -(x1 + x2 + x3);
        if (x4 < -r || x4 > r) continue;
        const long long d = (x1 + x4) * (x3 + x4);
        if (d == 0) continue;
        ++rep.total;
        const FrequencyQuad q{{x1, x2, x3, x4}};
        const double m4 = static_cast<double>(x1) * w(x3) + static_cast<double>(x2) * w(x4) +
                          static_cast<double>(x3) * w(x1) + static_cast<double>(x4) * w(x2);
        const double big = std::abs(m4 / static_cast<double>(d));
        const auto mag = detail::magnitudes(q);
        const double n1 = static_cast<double>(mag.sorted[0]);
        const double lo = static_cast<double>(std::min(mag.a14, mag.a34));
        const double hi = static_cast<double>(std::max(mag.a14, mag.a34));

        const bool hyp_i = n1 <= factor * lo || n1 >= factor * hi;
        const bool hyp_ii = n1 <= factor * hi && n1 >= factor * lo;
        const bool hyp_iii = case_iii_hypothesis(q, factor);
        if (hyp_i) update(rep.case_i, big / wm1[static_cast<size_t>(mag.sorted[0])], q);
        if (hyp_ii) update(rep.case_ii, big / wm1[static_cast<size_t>(mag.sorted[2])], q);
        if (hyp_iii) {
          const double bound = bracket(static_cast<double>(mag.sorted[2])) *
                               wm2[static_cast<size_t>(mag.sorted[0])];
          update(rep.case_iii, big / bound, q);
        }
        if (hyp_i)
          ++rep.classified_i;
        else if (hyp_ii)
          ++rep.classified_ii;
        else if (hyp_iii)
          ++rep.classified_iii;
        else
          ++rep.excluded;
      }
  return rep;
}

struct DmvtReport {
  long long xi_max = 0;
  double s = 0.0;
  double max_ratio = 0.0;
  FrequencyQuad witness{};  // (xi, eta, lambda, 0)
  long long count = 0;
};

namespace detail {

inline double dmvt_f(double x, double two_s) { return x * std::pow(1.0 + x * x, 0.5 * two_s); }

// f''(x) for f(x) = x <x>^{2s}, closed form
inline double dmvt_fpp(double x, double s) {
  return 2.0 * s * x * std::pow(1.0 + x * x, s - 2.0) * (3.0 + (1.0 + 2.0 * s) * x * x);
}

}  // namespace detail

// Second difference of f(x) = x <x>^{2s} against |f''(xi)| |eta| |lambda|,
// over |eta|,|lambda| <= xi/8 <= xi_max/8, eta,lambda != 0.
inline DmvtReport dmvt_ratio_scan(double s, long long xi_max) {
  if (xi_max < 8 || xi_max > 10000)
    throw resource_guard_error("dmvt_ratio_scan: xi_max outside [8, 1e4]");
  DmvtReport rep;
  rep.xi_max = xi_max;
  rep.s = s;
  const double two_s = 2.0 * s;
  for (long long xi = 8; xi <= xi_max; ++xi) {
    const long long h = xi / 8;
    const double fxi = detail::dmvt_f(static_cast<double>(xi), two_s);
    const double fpp = std::abs(detail::dmvt_fpp(static_cast<double>(xi), s));
    for (long long eta = -h; eta <= h; ++eta) {
      if (eta == 0) continue;
      const double fxe = detail::dmvt_f(static_cast<double>(xi + eta), two_s);
      for (long long lam = -h; lam <= h; ++lam) {
        if (lam == 0) continue;
        const double num = std::abs(detail::dmvt_f(static_cast<double>(xi + eta + lam), two_s) -
                                    fxe - detail::dmvt_f(static_cast<double>(xi + lam), two_s) +
                                    fxi);
        const double ratio = num / (fpp * static_cast<double>(std::llabs(eta)) *
                                    static_cast<double>(std::llabs(lam)));
        ++rep.count;
        if (ratio > rep.max_ratio) {
          rep.max_ratio = ratio;
          rep.witness = FrequencyQuad{{xi, eta, lam, 0}};
        }
      }
    }
  }
  return rep;
}

// sum_j (tau_j + (-1)^{j-1} xi_j^2) = 2 xi12 xi14 whenever both sums vanish;
// the xi part is checked in exact integer arithmetic.
inline bool dispersive_identity_check(const FrequencyQuad& q, const std::array<double, 4>& taus) {
  if (!q.on_gamma4()) throw precondition_error("dispersive_identity_check: quad not on Gamma4");
  const double tsum = taus[0] + taus[1] + taus[2] + taus[3];
  if (std::abs(tsum) > 1e-12 * std::max({1.0, std::abs(taus[0]), std::abs(taus[1]),
                                         std::abs(taus[2]), std::abs(taus[3])}))
    throw precondition_error("dispersive_identity_check: taus do not sum to zero");
  const long long lhs = q.xi[0] * q.xi[0] - q.xi[1] * q.xi[1] + q.xi[2] * q.xi[2] -
                        q.xi[3] * q.xi[3];
  return lhs == 2 * q.xi12() * q.xi14();
}

// xi1^2 - xi2^2 + xi3^2 - xi^2 = -2 (xi1 - xi)(xi3 - xi) for xi = xi1+xi2+xi3
inline bool factorization_check(long long xi1, long long xi2, long long xi3) {
  const long long xi = xi1 + xi2 + xi3;
  const long long lhs = xi1 * xi1 - xi2 * xi2 + xi3 * xi3 - xi * xi;
  return lhs == -2 * (xi1 - xi) * (xi3 - xi);
}

}  // namespace dnls
