// Test-only adaptive quadrature oracle. Kept independent of the library's
// numerical paths on purpose: it sees integrands only through a callback.
#pragma once

#include <cmath>
#include <functional>

namespace testsupport {

namespace detail {

template <typename F>
double simpson(const F& f, double a, double fa, double b, double fb, double m,
               double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adapt(const F& f, double a, double fa, double b, double fb, double m,
             double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson to an absolute target, recursion-capped.
template <typename F>
double integrate(const F& f, double a, double b, double tol = 1e-10,
                 int max_depth = 42) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = detail::simpson(f, a, fa, b, fb, m, fm);
  return detail::adapt(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace testsupport
