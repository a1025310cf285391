#include "perspcone/projection.hpp"

#include <cmath>
#include <limits>

namespace perspcone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

void check_finite(const ConePoint& p) {
  for (double c : p.x)
    if (!std::isfinite(c)) throw NonFiniteInput("projection: non-finite x coordinate");
  if (!std::isfinite(p.eta) || !std::isfinite(p.delta))
    throw NonFiniteInput("projection: non-finite eta or delta");
}

struct ScalarSolve {
  double x = 0.0;
  double eta = 0.0;
  double mu = 0.0;
  std::optional<double> nu;
  double residual = 0.0;
  int outer_iterations = 0;
  long inner_iterations = 0;
};

// Root of the outer equation for a point whose domain projection violates the
// epigraph inequality. The bracket is [0, -delta + persp(P_dom(x,eta))] when
// that value is finite, otherwise a geometric expansion.
ScalarSolve solve_prox_branch(const ScalarConvexFunction& fn, double x, double eta,
                              double delta, const SolverConfig& cfg) {
  ProjectionObjective phi(fn, x, eta, delta, cfg);
  const double persp_dom = fn.perspective_at_dom_projection(x, eta);

  ScalarSolve out;
  double root = 0.0;
  if (std::isfinite(persp_dom)) {
    const double hi = -delta + persp_dom;
    const double g_hi = phi(hi);
    out.outer_iterations = 1;
    if (g_hi <= 0.0) {
      // The exact upper endpoint is the root (its objective value is >= 0 in
      // exact arithmetic); accept it.
      root = hi;
      out.residual = g_hi;
    } else {
      const Bracket br{0.0, hi, delta - persp_dom, g_hi};
      const RootResult rr = solve_root(phi, br, cfg.tol_outer, cfg.method, cfg.max_iterations);
      root = rr.root;
      out.residual = rr.residual;
      out.outer_iterations += rr.iterations;
    }
  } else {
    const Bracket br = expand_bracket(phi, cfg.bracket_growth, cfg.max_expansions);
    const RootResult rr = solve_root(phi, br, cfg.tol_outer, cfg.method, cfg.max_iterations);
    root = rr.root;
    out.residual = rr.residual;
    out.outer_iterations = rr.iterations;
  }

  // A root at (or rounded to) zero means membership failed by less than the
  // solver can resolve; keep mu strictly positive so the prox limit applies.
  root = std::max(root, std::numeric_limits<double>::min());

  // Resynchronize the residual with the prox evaluation that will be
  // returned (the solver's residual may belong to an older evaluation of a
  // bracket endpoint), then land on the nonnegative side of the objective so
  // the returned point satisfies the epigraph inequality:
  // persp(prox) = mu + delta - phi(mu). Ulp-scale steps keep the multiplier
  // within the solved accuracy. Bisection keeps its midpoint so the stated
  // iteration/error identities hold exactly.
  out.residual = root + delta - phi.prox_at(root).value;
  if (cfg.method == RootMethod::brent && out.residual < 0.0) {
    double step = std::max(4.0 * std::numeric_limits<double>::epsilon() * root,
                           std::numeric_limits<double>::min());
    for (int k = 0; k < 64 && out.residual < 0.0; ++k) {
      root += step;
      step *= 2.0;
      out.residual = phi(root);
      ++out.outer_iterations;
    }
  }
  const PerspProxResult& pp = phi.prox_at(root);
  out.x = pp.x;
  out.eta = pp.eta;
  out.mu = root;
  out.nu = pp.nu;
  out.inner_iterations = phi.inner_iterations();
  return out;
}

} // namespace

ProjectionObjective::ProjectionObjective(const ScalarConvexFunction& fn, double x,
                                         double eta, double delta,
                                         const SolverConfig& cfg)
    : fn_(fn), x_(x), eta_(eta), delta_(delta), cfg_(cfg) {}

double ProjectionObjective::operator()(double mu) const {
  if (mu <= 0.0) return delta_ - fn_.perspective_at_dom_projection(x_, eta_);
  last_ = persp_prox(fn_, mu, x_, eta_, cfg_, nu_hint_);
  last_mu_ = mu;
  inner_total_ += last_.inner_iterations;
  if (last_.nu) nu_hint_ = *last_.nu;
  return mu + delta_ - last_.value;
}

const PerspProxResult& ProjectionObjective::prox_at(double mu) const {
  if (mu <= 0.0) mu = std::numeric_limits<double>::min();
  if (mu != last_mu_) (*this)(mu);
  return last_;
}

ProjectionResult project_epi(const ScalarConvexFunction& fn, const ConePoint& p,
                             const SolverConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  check_finite(p);
  if (p.x.size() != 1)
    throw std::invalid_argument("project_epi: expected a scalar cone point");
  const double x = p.x0();

  ProjectionResult out;
  if (fn.perspective_dom_leq(x, p.eta, p.delta)) {
    const auto [px, peta] = fn.project_dom_perspective(x, p.eta);
    out.point = ConePoint::scalar(px, peta, p.delta);
    out.proj_case = (px == x && peta == p.eta) ? ProjectionCase::interior
                                               : ProjectionCase::domain_face;
  } else {
    const ScalarSolve s = solve_prox_branch(fn, x, p.eta, p.delta, cfg);
    out.point = ConePoint::scalar(s.x, s.eta, p.delta + s.mu);
    out.mu = s.mu;
    out.nu = s.nu;
    out.proj_case = ProjectionCase::prox_branch;
    out.outer_residual = s.residual;
    out.outer_iterations = s.outer_iterations;
    out.inner_iterations_total = s.inner_iterations;
  }
  out.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - t0);
  return out;
}

ProjectionResult project_epi_radial(const ScalarConvexFunction& phi,
                                    const ConePoint& p, const SolverConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  check_finite(p);
  if (!phi.radial_capable())
    throw std::invalid_argument("project_epi_radial: function is not even with full domain");

  const double r = norm2(p.x);
  const std::size_t n = p.x.size();
  ProjectionResult out;

  if (phi.perspective_dom_leq(r, p.eta, p.delta)) {
    out.point = ConePoint(p.x, p.eta > 0.0 ? p.eta : 0.0, p.delta);
    out.proj_case = p.eta >= 0.0 ? ProjectionCase::interior : ProjectionCase::domain_face;
  } else if (p.delta < 0.0 &&
             p.eta - p.delta * phi.conjugate(r / (-p.delta)) <= 0.0) {
    // Apex: the projection is the origin and the multiplier is -delta.
    out.point = ConePoint(std::vector<double>(n, 0.0), 0.0, 0.0);
    out.mu = -p.delta;
    out.proj_case = ProjectionCase::prox_branch;
  } else if (r == 0.0) {
    const double c0 = phi.conjugate(0.0);
    const double gap = p.eta - p.delta * c0;
    if (!(gap > 0.0))
      throw std::logic_error("project_epi_radial: unreachable x = 0 configuration");
    const double denom = 1.0 + c0 * c0;
    const double nu = gap / denom;
    const double delta_out = c0 * (p.delta * c0 - p.eta) / denom;
    out.point = ConePoint(std::vector<double>(n, 0.0), nu, delta_out);
    out.mu = delta_out - p.delta;
    out.nu = nu;
    out.proj_case = ProjectionCase::prox_branch;
  } else {
    const ScalarSolve s = solve_prox_branch(phi, r, p.eta, p.delta, cfg);
    std::vector<double> xout(p.x.begin(), p.x.end());
    const double scale = s.x / r;
    for (double& c : xout) c *= scale;
    out.point = ConePoint(std::move(xout), s.eta, p.delta + s.mu);
    out.mu = s.mu;
    out.nu = s.nu;
    out.proj_case = ProjectionCase::prox_branch;
    out.outer_residual = s.residual;
    out.outer_iterations = s.outer_iterations;
    out.inner_iterations_total = s.inner_iterations;
  }
  out.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - t0);
  return out;
}

double certify_error_bound(const ProjectionResult& result, const ConePoint& input,
                           double eps) {
  if (result.proj_case != ProjectionCase::prox_branch || !(result.mu > 0.0))
    throw std::invalid_argument("certify_error_bound: requires a prox-branch result");
  double s = 0.0;
  for (std::size_t i = 0; i < input.x.size(); ++i) {
    const double d = input.x[i] - result.point.x[i];
    s += d * d;
  }
  const double de = input.eta - result.point.eta;
  s += de * de;
  return eps / result.mu * std::sqrt(s);
}

} // namespace perspcone
