#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dnls {

using cplx = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// <x> = (1 + x^2)^{1/2}
inline double bracket(double x) { return std::sqrt(1.0 + x * x); }

// <x>^e
inline double bracket_pow(double x, double e) { return std::pow(1.0 + x * x, 0.5 * e); }

struct cutoff_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct resource_guard_error : std::length_error {
  using std::length_error::length_error;
};

struct inconsistent_mu_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct divergence_error : std::runtime_error {
  double time;
  explicit divergence_error(double t)
      : std::runtime_error("non-finite state at t = " + std::to_string(t)), time(t) {}
};

// SplitMix64: the fixed generator behind all seeded data.  One mixing pass.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// bits -> [0,1), 53-bit resolution
inline double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Integer 4-tuple; lives on the hyperplane xi1+xi2+xi3+xi4 = 0 wherever required.
struct FrequencyQuad {
  std::array<long long, 4> xi{};

  long long sum() const { return xi[0] + xi[1] + xi[2] + xi[3]; }
  bool on_gamma4() const { return sum() == 0; }
  long long xi12() const { return xi[0] + xi[1]; }
  long long xi14() const { return xi[0] + xi[3]; }
  long long xi34() const { return xi[2] + xi[3]; }

  friend bool operator==(const FrequencyQuad&, const FrequencyQuad&) = default;
  friend auto operator<=>(const FrequencyQuad& a, const FrequencyQuad& b) {
    return a.xi <=> b.xi;
  }
};

}  // namespace dnls
