#ifndef PERSPCONE_PROJECTION_HPP
#define PERSPCONE_PROJECTION_HPP

#include <chrono>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "perspcone/functions.hpp"
#include "perspcone/persp_prox.hpp"
#include "perspcone/rootfind.hpp"

namespace perspcone {

struct NonFiniteInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A point (x, eta, delta) to be projected onto the epigraph of the
// perspective of a convex function; x has length 1 for scalar cones.
struct ConePoint {
  std::vector<double> x;
  double eta = 0.0;
  double delta = 0.0;

  ConePoint() = default;
  ConePoint(std::vector<double> x_, double eta_, double delta_)
      : x(std::move(x_)), eta(eta_), delta(delta_) {}

  static ConePoint scalar(double x, double eta, double delta) {
    return ConePoint({x}, eta, delta);
  }
  double x0() const { return x.front(); }
};

enum class ProjectionCase { interior, domain_face, prox_branch };

struct ProjectionResult {
  ConePoint point;
  double mu = 0.0;                  // 0 unless the prox branch was taken
  std::optional<double> nu;         // inner multiplier, when one was solved
  ProjectionCase proj_case = ProjectionCase::interior;
  double outer_residual = 0.0;
  int outer_iterations = 0;
  long inner_iterations_total = 0;
  std::chrono::nanoseconds elapsed{0};
};

// Objective of the outer scalar equation: delta - persp(P_dom(x, eta)) at
// mu = 0 and mu + delta - persp(prox_{mu persp}(x, eta)) for mu > 0. Strictly
// increasing, with its unique zero at the projection's multiplier.
class ProjectionObjective {
public:
  ProjectionObjective(const ScalarConvexFunction& fn, double x, double eta,
                      double delta, const SolverConfig& cfg);

  double operator()(double mu) const;

  const PerspProxResult& prox_at(double mu) const;
  long inner_iterations() const { return inner_total_; }

private:
  const ScalarConvexFunction& fn_;
  double x_, eta_, delta_;
  const SolverConfig& cfg_;
  mutable PerspProxResult last_{};
  mutable double last_mu_ = -1.0;
  mutable double nu_hint_ = 0.0;
  mutable long inner_total_ = 0;
};

// Projection onto the epigraph of persp(f) for a scalar cone. Points whose
// domain projection already satisfies the epigraph inequality are returned
// directly; otherwise the outer equation is solved on a certified bracket
// (expanded geometrically when the domain projection falls outside dom persp).
ProjectionResult project_epi(const ScalarConvexFunction& fn, const ConePoint& p,
                             const SolverConfig& cfg = {});

// Radial cones f = phi(||.||) for even, supercoercive, full-domain phi. The
// solve reduces to the scalar problem at ||x|| plus closed forms for the
// apex and x = 0 faces.
ProjectionResult project_epi_radial(const ScalarConvexFunction& phi,
                                    const ConePoint& p,
                                    const SolverConfig& cfg = {});

// Computable right-hand side of the a-posteriori bound
// ||(x*, eta*) - (xbar, etabar)|| <= eps/(delta_out - delta) * ||(x, eta) - (xbar, etabar)||.
// Requires the prox branch (mu > 0).
double certify_error_bound(const ProjectionResult& result, const ConePoint& input,
                           double eps);

} // namespace perspcone

#endif
