#include "perspcone/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace perspcone {

Bracket expand_bracket(const ScalarObjective& g, double growth, int max_expansions) {
  if (!(growth > 1.0))
    throw std::invalid_argument("expand_bracket: growth factor must exceed 1");
  double lo = 0.0;
  double g_lo = -std::numeric_limits<double>::infinity();
  double hi = 1.0;
  for (int k = 1; k <= max_expansions; ++k) {
    hi = std::pow(growth, static_cast<double>(k));
    if (!std::isfinite(hi))
      throw BracketExpansionExceeded("expand_bracket: upper endpoint overflowed");
    const double g_hi = g(hi);
    if (g_hi > 0.0) return Bracket{lo, hi, g_lo, g_hi};
    lo = hi;
    g_lo = g_hi;
  }
  throw BracketExpansionExceeded("expand_bracket: no sign change within expansion budget");
}

RootResult solve_bisection(const ScalarObjective& g, Bracket bracket, double eps,
                           int max_iterations) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  const double width = hi - lo;
  int halvings = static_cast<int>(std::ceil(std::log2(std::max(width / eps, 1.0))));
  halvings = std::clamp(halvings, 1, max_iterations);

  double mid = 0.5 * (lo + hi);
  double g_mid = 0.0;
  int n = 0;
  for (; n < halvings; ++n) {
    mid = 0.5 * (lo + hi);
    g_mid = g(mid);
    if (g_mid == 0.0) {
      ++n;
      break;
    }
    if (g_mid > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return {mid, g_mid, n, hi - lo};
}

RootResult solve_brent(const ScalarObjective& g, Bracket bracket, double eps,
                       int max_iterations) {
  double a = bracket.lo, b = bracket.hi;
  if (!bracket.endpoints_evaluated) {
    bracket.g_lo = g(a);
    bracket.g_hi = g(b);
  }
  double fa = bracket.g_lo, fb = bracket.g_hi;
  if (fa == 0.0) return {a, 0.0, 0, b - a};
  if (std::isinf(fa)) fa = std::copysign(std::numeric_limits<double>::max(), fa);
  double c = a, fc = fa;
  double d = b - a, e = d;
  const double mach = std::numeric_limits<double>::epsilon();
  double eps_active = eps;

  for (int it = 1; it <= max_iterations; ++it) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    double tol1 = 2.0 * mach * std::abs(b) + 0.5 * eps_active;
    const double xm = 0.5 * (c - b);
    if (fb == 0.0) return {b, 0.0, it, std::abs(c - b)};
    if (std::abs(xm) <= tol1) {
      // Interval criterion met. Steep objectives can still sit far from the
      // root in value space, so polish at machine resolution until the
      // residual also drops below eps (or no representable room remains).
      if (std::abs(fb) <= eps || eps_active == 0.0)
        return {b, fb, it, std::abs(c - b)};
      eps_active = 0.0;
      tol1 = 2.0 * mach * std::abs(b);
      if (std::abs(xm) <= tol1) return {b, fb, it, std::abs(c - b)};
    }

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (std::abs(d) > tol1)
      b += d;
    else
      b += (xm > 0.0 ? tol1 : -tol1);
    fb = g(b);
  }
  return {b, fb, max_iterations, std::abs(c - b)};
}

} // namespace perspcone
