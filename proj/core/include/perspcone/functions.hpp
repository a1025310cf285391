#ifndef PERSPCONE_FUNCTIONS_HPP
#define PERSPCONE_FUNCTIONS_HPP

#include <memory>
#include <string>
#include <utility>

namespace perspcone {

// Contract a cone-defining convex lsc function must satisfy. Values use the
// floating +inf for points outside the domain; NaN is never returned.
//
// The perspective of f is
//   persp(x, eta) = eta * f(x/eta)   for eta > 0,
//                 = recession(x)     for eta = 0,
//                 = +inf             for eta < 0,
// and recession(x) equals the support function of cl(dom f*).
class ScalarConvexFunction {
public:
  virtual ~ScalarConvexFunction() = default;

  virtual std::string name() const = 0;

  virtual double value(double x) const = 0;
  virtual double conjugate(double u) const = 0;

  // prox of gamma*f and gamma*f*; gamma is clamped below at 1e-300 so the
  // prox -> identity limit survives a vanishing parameter.
  virtual double prox(double gamma, double x) const = 0;
  virtual double prox_conjugate(double gamma, double x) const = 0;

  // Projections onto cl(dom f*) and cl(dom persp).
  virtual double project_dom_conjugate(double u) const = 0;
  virtual std::pair<double, double> project_dom_perspective(double x, double eta) const {
    return {x, eta > 0.0 ? eta : 0.0}; // valid whenever dom f is all of R
  }

  virtual double perspective(double x, double eta) const;
  virtual double recession(double x) const = 0;

  // f'(x) at differentiable interior points; used for boundary normals and
  // derivative-based checks.
  virtual double derivative(double x) const = 0;

  // f(prox_{gamma f}(x)) and f*(prox_{gamma f*}(x)). Overridden where a
  // cancellation-free closed form exists.
  virtual double value_at_prox(double gamma, double x) const {
    return value(prox(gamma, x));
  }
  virtual double conjugate_at_prox_conjugate(double gamma, double x) const {
    return conjugate(prox_conjugate(gamma, x));
  }

  // prox of mu * recession; the default is the Moreau form
  // x - mu * P_{cl dom f*}(x/mu).
  virtual double prox_recession(double mu, double x) const {
    return x - mu * project_dom_conjugate(x / mu);
  }

  // mu * f*(P_{cl dom f*}(x/mu)). The product is finite for vanishing mu even
  // when f*(x/mu) alone overflows, so implementations avoid the intermediate.
  virtual double scaled_conjugate_at_dom(double mu, double x) const {
    return mu * conjugate(project_dom_conjugate(x / mu));
  }

  // persp at the projection onto cl(dom persp); +inf when it overflows.
  double perspective_at_dom_projection(double x, double eta) const {
    const auto [px, peta] = project_dom_perspective(x, eta);
    return perspective(px, peta);
  }

  // persp(P_{cl dom persp}(x, eta)) <= delta, decided in the log domain when
  // the value itself would overflow.
  virtual bool perspective_dom_leq(double x, double eta, double delta) const {
    return perspective_at_dom_projection(x, eta) <= delta;
  }

  // True for even, supercoercive functions with dom f = R; such functions may
  // parameterize radial cones f = phi(||.||).
  virtual bool radial_capable() const { return false; }
};

// f(x) = exp(x). Epigraph of its perspective is the exponential cone.
class ExpFunction final : public ScalarConvexFunction {
public:
  std::string name() const override { return "exp"; }
  double value(double x) const override;
  double conjugate(double u) const override;
  double prox(double gamma, double x) const override;
  double prox_conjugate(double gamma, double x) const override;
  double project_dom_conjugate(double u) const override;
  double perspective(double x, double eta) const override;
  double recession(double x) const override;
  double derivative(double x) const override;
  double value_at_prox(double gamma, double x) const override;
  double conjugate_at_prox_conjugate(double gamma, double x) const override;
  double prox_recession(double mu, double x) const override;
  double scaled_conjugate_at_dom(double mu, double x) const override;
  bool perspective_dom_leq(double x, double eta, double delta) const override;
};

// f(x) = x/(1-x) for x < 1, +inf otherwise (hyperbolic penalty). Both proxes
// solve a cubic with a certified bracket.
class HyperbolicFunction final : public ScalarConvexFunction {
public:
  std::string name() const override { return "hyperbolic"; }
  double value(double x) const override;
  double conjugate(double u) const override;
  double prox(double gamma, double x) const override;
  double prox_conjugate(double gamma, double x) const override;
  double project_dom_conjugate(double u) const override;
  std::pair<double, double> project_dom_perspective(double x, double eta) const override;
  double perspective(double x, double eta) const override;
  double recession(double x) const override;
  double derivative(double x) const override;
  double prox_recession(double mu, double x) const override;
  double scaled_conjugate_at_dom(double mu, double x) const override;
};

// f(x) = x^2/2; self-conjugate, analytically tractable cross-check. Its
// perspective is the quadratic-over-linear function x^2/(2 eta).
class QuadraticFunction final : public ScalarConvexFunction {
public:
  std::string name() const override { return "quadratic"; }
  double value(double x) const override { return 0.5 * x * x; }
  double conjugate(double u) const override { return 0.5 * u * u; }
  double prox(double gamma, double x) const override;
  double prox_conjugate(double gamma, double x) const override;
  double project_dom_conjugate(double u) const override { return u; }
  double perspective(double x, double eta) const override;
  double recession(double x) const override;
  double derivative(double x) const override { return x; }
  double prox_recession(double, double) const override { return 0.0; }
  double scaled_conjugate_at_dom(double mu, double x) const override {
    return 0.5 * x * x / mu; // exact form; overflow here is genuine
  }
  bool radial_capable() const override { return true; }
};

// phi(x) = exp(|x|): the even function behind the radial exponential cone.
class AbsExpFunction final : public ScalarConvexFunction {
public:
  std::string name() const override { return "abs-exp"; }
  double value(double x) const override;
  double conjugate(double u) const override;
  double prox(double gamma, double x) const override;
  double prox_conjugate(double gamma, double x) const override;
  double project_dom_conjugate(double u) const override { return u; }
  double perspective(double x, double eta) const override;
  double recession(double x) const override;
  double derivative(double x) const override;
  double value_at_prox(double gamma, double x) const override;
  double conjugate_at_prox_conjugate(double gamma, double x) const override;
  double prox_recession(double, double) const override { return 0.0; }
  double scaled_conjugate_at_dom(double mu, double x) const override;
  bool perspective_dom_leq(double x, double eta, double delta) const override;
  bool radial_capable() const override { return true; }
};

// Builtin lookup by the names used across the CLI: "exp", "hyperbolic",
// "quadratic", "abs-exp". Returns nullptr for unknown names.
std::shared_ptr<const ScalarConvexFunction> make_function(const std::string& name);

} // namespace perspcone

#endif
