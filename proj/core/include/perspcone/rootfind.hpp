#ifndef PERSPCONE_ROOTFIND_HPP
#define PERSPCONE_ROOTFIND_HPP

#include <functional>
#include <stdexcept>

namespace perspcone {

// Sign-change interval: g(lo) <= 0 < g(hi).
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double g_lo = 0.0;
  double g_hi = 0.0;
  bool endpoints_evaluated = false;

  Bracket() = default;
  Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {}
  Bracket(double lo_, double hi_, double g_lo_, double g_hi_)
      : lo(lo_), hi(hi_), g_lo(g_lo_), g_hi(g_hi_), endpoints_evaluated(true) {}
};

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  double bracket_width = 0.0;
};

enum class RootMethod { bisection, brent };

struct SolverConfig {
  double tol_outer = 1e-9;
  double tol_inner = 1e-10;
  double bracket_growth = 2.0; // N > 1
  int max_expansions = 200;
  // Analytic upper brackets can span hundreds of decades before the first
  // few halvings reach the root's scale, so the budget is generous.
  int max_iterations = 2000;
  RootMethod method = RootMethod::brent;

  static SolverConfig with_tolerance(double tol, RootMethod m = RootMethod::brent) {
    SolverConfig cfg;
    cfg.tol_outer = tol;
    cfg.tol_inner = tol / 10.0;
    cfg.method = m;
    return cfg;
  }
};

struct BracketExpansionExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ScalarObjective = std::function<double(double)>;

// Geometric search for a sign change of an increasing objective with
// g(0+) < 0: tries hi = N^k for k = 1, 2, ... and returns [N^{k-1} or 0, N^k]
// at the first hi with g(hi) > 0. A +inf value counts as positive.
Bracket expand_bracket(const ScalarObjective& g, double growth, int max_expansions);

// Plain bisection. Runs exactly ceil(log2(width/eps)) halvings (early exit on
// an exact zero) and returns the last midpoint, so |root - true root| <= eps.
RootResult solve_bisection(const ScalarObjective& g, Bracket bracket, double eps,
                           int max_iterations = 200);

// Brent's method (inverse quadratic / secant with bisection fallback).
// Same contract as solve_bisection with typically far fewer iterations.
RootResult solve_brent(const ScalarObjective& g, Bracket bracket, double eps,
                       int max_iterations = 200);

inline RootResult solve_root(const ScalarObjective& g, const Bracket& bracket,
                             double eps, RootMethod method, int max_iterations) {
  return method == RootMethod::bisection
             ? solve_bisection(g, bracket, eps, max_iterations)
             : solve_brent(g, bracket, eps, max_iterations);
}

} // namespace perspcone

#endif
