#pragma once

// Test-side numerics, kept independent of the library implementations so
// they can serve as oracles: adaptive Simpson quadrature and a tiny RNG
// wrapper with fixed seeds.

#include <cmath>
#include <random>

namespace oracle {

template <class F>
double simpson_rec(F&& f, double a, double b, double fa, double fm, double fb,
                   double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12) {
  double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  return simpson_rec(f, a, b, fa, fm, fb, tol, 48);
}

inline std::mt19937_64 rng(unsigned long seed = 12345) {
  return std::mt19937_64(seed);
}

}  // namespace oracle
