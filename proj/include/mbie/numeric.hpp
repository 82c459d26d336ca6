#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "mbie/errors.hpp"

namespace mbie {

using cd = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cd iu{0.0, 1.0};
inline constexpr double inf = std::numeric_limits<double>::infinity();

inline cd expi(double phase) { return std::polar(1.0, phase); }

// Argument normalized to (0, 2*pi). Values on the positive real axis are the
// caller's problem: arg 0 is mapped to 2*pi, so test for it beforehand when a
// strict 0 < arg < 2*pi is required.
inline double arg_0_2pi(cd z) {
  double a = std::arg(z);
  if (a <= 0.0) a += 2.0 * pi;
  return a;
}

// z^w with the branch fixed by arg z in (0, 2*pi).
inline cd pow_branch_0_2pi(cd z, cd w) {
  if (z == cd(0.0, 0.0)) throw ValidationError("pow_branch_0_2pi: zero base");
  cd logz(std::log(std::abs(z)), arg_0_2pi(z));
  return std::exp(w * logz);
}

// Principal-branch power, arg z in (-pi, pi].
inline cd pow_principal(cd z, cd w) {
  if (z == cd(0.0, 0.0)) throw ValidationError("pow_principal: zero base");
  return std::exp(w * std::log(z));
}

// sin(pi*(a - i*xi)) with the growing exponential factored out:
//   sin(pi z) = e^{pi|xi|} * core / (2i),
//   core = e^{i pi a} - e^{-i pi a} e^{-2 pi xi}        (xi >= 0)
//        = e^{i pi a} e^{+2 pi xi} - e^{-i pi a}        (xi <  0).
// Returns core; the scale e^{pi|xi|}/(2i) is recovered by the helpers below.
inline cd sin_pi_core(double a, double xi) {
  double damp = std::exp(-2.0 * pi * std::abs(xi));
  if (xi >= 0.0) return expi(pi * a) - expi(-pi * a) * damp;
  return expi(pi * a) * damp - expi(-pi * a);
}

// Ratio sin(pi(a+b-i*xi)) / sin(pi(a-i*xi)), stable for all xi.
inline cd sin_pi_ratio(double a, double b, double xi) {
  return sin_pi_core(a + b, xi) / sin_pi_core(a, xi);
}

// 1 / sin(pi(a - i*xi))^2, stable; underflows cleanly to 0 for large |xi|.
inline cd inv_sin_pi_sq(double a, double xi) {
  cd core = sin_pi_core(a, xi);
  double damp = std::exp(-2.0 * pi * std::abs(xi));
  return -4.0 * damp / (core * core);
}

// log(sin(pi z)) for z = a - i*xi, evaluated without overflow.
inline cd log_sin_pi(double a, double xi) {
  return pi * std::abs(xi) + std::log(sin_pi_core(a, xi) / (2.0 * iu));
}

// 1 / sin(pi(a - i*xi)), stable for all xi.
inline cd inv_sin_pi(double a, double xi) { return std::exp(-log_sin_pi(a, xi)); }

// coth(z), clamped to +-1 in the far field where tanh saturates.
inline cd coth(cd z) {
  if (std::abs(z.real()) > 20.0) return cd(z.real() > 0 ? 1.0 : -1.0, 0.0);
  cd t = std::tanh(z);
  return 1.0 / t;
}

inline double sqr(double x) { return x * x; }

// Relative l2 distance between sample vectors.
inline double rel_l2(const std::vector<cd>& a, const std::vector<cd>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += std::norm(a[k] - b[k]);
    den += std::norm(b[k]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

inline double max_abs(const std::vector<cd>& v) {
  double m = 0.0;
  for (cd z : v) m = std::max(m, std::abs(z));
  return m;
}

} // namespace mbie
