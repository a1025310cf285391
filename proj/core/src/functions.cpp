#include "perspcone/functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "perspcone/lambert.hpp"

namespace perspcone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGammaFloor = 1e-300;
constexpr double kLogThreshold = 700.0;

double clamp_gamma(double gamma) { return std::max(gamma, kGammaFloor); }

// Safeguarded Newton for a strictly increasing objective with
// h(lo) <= 0 <= h(hi); falls back to bisection whenever the Newton step
// leaves the bracket. Converges to machine precision.
template <class F, class DF>
double newton_bisection(F h, DF dh, double lo, double hi) {
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    const double v = h(t);
    if (v == 0.0) return t;
    if (v > 0.0)
      hi = t;
    else
      lo = t;
    const double d = dh(t);
    double next = t - v / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(next))
      return next;
    t = next;
  }
  return t;
}

} // namespace

double ScalarConvexFunction::perspective(double x, double eta) const {
  if (eta > 0.0) return eta * value(x / eta);
  if (eta == 0.0) return recession(x);
  return kInf;
}

// ---------------------------------------------------------------------------
// exp

double ExpFunction::value(double x) const { return std::exp(x); }

double ExpFunction::conjugate(double u) const {
  if (u < 0.0) return kInf;
  if (u == 0.0) return 0.0;
  return u * (std::log(u) - 1.0);
}

double ExpFunction::prox(double gamma, double x) const {
  gamma = clamp_gamma(gamma);
  const double w = lambert_w_scaled_exp(gamma, x);
  // x - w equals log(w/gamma) exactly; the log form keeps full precision
  // when w is large enough to swallow the difference.
  if (w > 1.0) {
    const double r = w / gamma;
    return std::isfinite(r) ? std::log(r) : std::log(w) - std::log(gamma);
  }
  return x - w;
}

double ExpFunction::prox_conjugate(double gamma, double x) const {
  gamma = clamp_gamma(gamma);
  return gamma * lambert_w_scaled_exp(1.0 / gamma, x / gamma);
}

double ExpFunction::project_dom_conjugate(double u) const { return std::max(0.0, u); }

double ExpFunction::perspective(double x, double eta) const {
  if (eta > 0.0) {
    const double s = x / eta;
    if (s <= kLogThreshold) {
      const double v = eta * std::exp(s);
      if (std::isfinite(v)) return v;
    }
    const double t = std::log(eta) + s;
    return t > 709.0 ? kInf : std::exp(t);
  }
  if (eta == 0.0) return x <= 0.0 ? 0.0 : kInf;
  return kInf;
}

double ExpFunction::recession(double x) const { return x <= 0.0 ? 0.0 : kInf; }

double ExpFunction::derivative(double x) const { return std::exp(x); }

double ExpFunction::value_at_prox(double gamma, double x) const {
  gamma = clamp_gamma(gamma);
  return lambert_w_scaled_exp(gamma, x) / gamma;
}

double ExpFunction::conjugate_at_prox_conjugate(double gamma, double x) const {
  gamma = clamp_gamma(gamma);
  const double w = lambert_w_scaled_exp(1.0 / gamma, x / gamma);
  // The prox point gamma*w is a plain product of relative-accurate factors,
  // so evaluating f* there directly is stable in every regime; expanding via
  // (x - gamma)*w - gamma*w^2 cancels catastrophically for large w.
  const double q = gamma * w;
  if (q <= 0.0) return 0.0;
  return q * (std::log(q) - 1.0);
}

double ExpFunction::prox_recession(double, double x) const { return std::min(0.0, x); }

double ExpFunction::scaled_conjugate_at_dom(double mu, double x) const {
  mu = clamp_gamma(mu);
  if (x <= 0.0) return 0.0;
  return x * (std::log(x) - std::log(mu) - 1.0);
}

bool ExpFunction::perspective_dom_leq(double x, double eta, double delta) const {
  if (eta > 0.0) {
    const double s = x / eta;
    if (s <= kLogThreshold) {
      const double v = eta * std::exp(s);
      if (std::isfinite(v)) return v <= delta;
    }
    return delta > 0.0 && std::log(eta) + s <= std::log(delta);
  }
  return x <= 0.0 && delta >= 0.0;
}

// ---------------------------------------------------------------------------
// hyperbolic penalty

double HyperbolicFunction::value(double x) const {
  return x < 1.0 ? x / (1.0 - x) : kInf;
}

double HyperbolicFunction::conjugate(double u) const {
  if (u < 0.0) return kInf;
  const double r = std::sqrt(u) - 1.0;
  return r * r;
}

// prox_{gamma f}(x) is the root p < 1 of (x - p)(1 - p)^2 = gamma. In terms
// of u = 1 - p > max(0, 1 - x) the cubic u^3 + (x-1)u^2 - gamma is strictly
// increasing on the bracket, negative at its low end. The bracket width is
// tightened per regime so it never dwarfs the root.
double HyperbolicFunction::prox(double gamma, double x) const {
  gamma = clamp_gamma(gamma);
  const double u_lo = std::max(0.0, 1.0 - x);
  double d = std::cbrt(gamma);
  if (u_lo > 0.0) d = std::min(d, gamma / (u_lo * u_lo));
  if (x > 1.0) d = std::min(d, std::sqrt(gamma / (x - 1.0)));
  d = d * (1.0 + 1e-9) + 1e-300;
  const double u_hi = u_lo + d;
  const double u = newton_bisection(
      [&](double t) { return ((x - 1.0) + t) * t * t - gamma; },
      [&](double t) { return t * (3.0 * t + 2.0 * (x - 1.0)); },
      u_lo, u_hi);
  return 1.0 - u;
}

// prox_{gamma f*}(x) is the root q > max(x - gamma, 0) of
// q(q + gamma - x)^2 = gamma^2, again strictly increasing on the bracket.
double HyperbolicFunction::prox_conjugate(double gamma, double x) const {
  gamma = clamp_gamma(gamma);
  const double q_lo = std::max(x - gamma, 0.0);
  const double cg = std::cbrt(gamma);
  double d = cg * cg;
  if (x < gamma) {
    const double r = gamma / (gamma - x);
    d = std::min(d, r * r);
  } else if (x > gamma) {
    d = std::min(d, gamma / std::sqrt(x - gamma));
  }
  d = d * (1.0 + 1e-9) + 1e-300;
  const double q_hi = q_lo + d;
  return newton_bisection(
      [&](double q) {
        const double r = q + gamma - x;
        return q * r * r - gamma * gamma;
      },
      [&](double q) {
        const double r = q + gamma - x;
        return r * (r + 2.0 * q);
      },
      q_lo, q_hi);
}

double HyperbolicFunction::project_dom_conjugate(double u) const { return std::max(0.0, u); }

std::pair<double, double> HyperbolicFunction::project_dom_perspective(double x, double eta) const {
  if (eta <= 0.0 && x <= -eta) return {std::min(0.0, x), 0.0};
  if (std::abs(eta) <= x) {
    const double m = 0.5 * (x + eta);
    return {m, m};
  }
  return {x, eta};
}

double HyperbolicFunction::perspective(double x, double eta) const {
  if (eta > 0.0) return x < eta ? eta * x / (eta - x) : kInf;
  if (eta == 0.0) return x <= 0.0 ? 0.0 : kInf;
  return kInf;
}

double HyperbolicFunction::recession(double x) const { return x <= 0.0 ? 0.0 : kInf; }

double HyperbolicFunction::derivative(double x) const {
  const double d = 1.0 - x;
  return 1.0 / (d * d);
}

double HyperbolicFunction::prox_recession(double, double x) const { return std::min(0.0, x); }

double HyperbolicFunction::scaled_conjugate_at_dom(double mu, double x) const {
  mu = clamp_gamma(mu);
  if (x <= 0.0) return mu; // f*(P(x/mu)) = f*(0) = 1
  const double r = std::sqrt(x) - std::sqrt(mu);
  return r * r;
}

// ---------------------------------------------------------------------------
// quadratic

double QuadraticFunction::prox(double gamma, double x) const {
  return x / (1.0 + clamp_gamma(gamma));
}

double QuadraticFunction::prox_conjugate(double gamma, double x) const {
  return x / (1.0 + clamp_gamma(gamma));
}

double QuadraticFunction::perspective(double x, double eta) const {
  if (eta > 0.0) return 0.5 * x * x / eta;
  if (eta == 0.0) return x == 0.0 ? 0.0 : kInf;
  return kInf;
}

double QuadraticFunction::recession(double x) const { return x == 0.0 ? 0.0 : kInf; }

// ---------------------------------------------------------------------------
// exp(|.|)

double AbsExpFunction::value(double x) const { return std::exp(std::abs(x)); }

double AbsExpFunction::conjugate(double u) const {
  const double a = std::abs(u);
  if (a <= 1.0) return -1.0;
  return a * (std::log(a) - 1.0);
}

double AbsExpFunction::prox(double gamma, double x) const {
  gamma = clamp_gamma(gamma);
  const double a = std::abs(x);
  if (a <= gamma) return 0.0;
  const double w = lambert_w_scaled_exp(gamma, a);
  double p;
  if (w > 1.0) {
    const double r = w / gamma;
    p = std::isfinite(r) ? std::log(r) : std::log(w) - std::log(gamma);
  } else {
    p = a - w;
  }
  return std::copysign(p, x);
}

double AbsExpFunction::prox_conjugate(double gamma, double x) const {
  gamma = clamp_gamma(gamma);
  const double a = std::abs(x);
  if (a <= 1.0) return x;
  const double q = gamma * lambert_w_scaled_exp(1.0 / gamma, a / gamma);
  return std::copysign(q, x);
}

double AbsExpFunction::perspective(double x, double eta) const {
  if (eta > 0.0) {
    const double s = std::abs(x) / eta;
    if (s <= kLogThreshold) {
      const double v = eta * std::exp(s);
      if (std::isfinite(v)) return v;
    }
    const double t = std::log(eta) + s;
    return t > 709.0 ? kInf : std::exp(t);
  }
  if (eta == 0.0) return x == 0.0 ? 0.0 : kInf;
  return kInf;
}

double AbsExpFunction::recession(double x) const { return x == 0.0 ? 0.0 : kInf; }

double AbsExpFunction::derivative(double x) const {
  return std::copysign(std::exp(std::abs(x)), x);
}

double AbsExpFunction::value_at_prox(double gamma, double x) const {
  gamma = clamp_gamma(gamma);
  const double a = std::abs(x);
  if (a <= gamma) return 1.0;
  return lambert_w_scaled_exp(gamma, a) / gamma;
}

double AbsExpFunction::conjugate_at_prox_conjugate(double gamma, double x) const {
  gamma = clamp_gamma(gamma);
  const double a = std::abs(x);
  if (a <= 1.0) return -1.0;
  const double q = gamma * lambert_w_scaled_exp(1.0 / gamma, a / gamma);
  if (q <= 1.0) return -1.0;
  return q * (std::log(q) - 1.0);
}

double AbsExpFunction::scaled_conjugate_at_dom(double mu, double x) const {
  mu = clamp_gamma(mu);
  const double a = std::abs(x);
  if (a <= mu) return -mu; // phi*(a/mu) = -1 on [-1, 1]
  return a * (std::log(a) - std::log(mu) - 1.0);
}

bool AbsExpFunction::perspective_dom_leq(double x, double eta, double delta) const {
  if (eta > 0.0) {
    const double s = std::abs(x) / eta;
    if (s <= kLogThreshold) {
      const double v = eta * std::exp(s);
      if (std::isfinite(v)) return v <= delta;
    }
    return delta > 0.0 && std::log(eta) + s <= std::log(delta);
  }
  return x == 0.0 && delta >= 0.0;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const ScalarConvexFunction> make_function(const std::string& name) {
  if (name == "exp") return std::make_shared<ExpFunction>();
  if (name == "hyperbolic") return std::make_shared<HyperbolicFunction>();
  if (name == "quadratic") return std::make_shared<QuadraticFunction>();
  if (name == "abs-exp") return std::make_shared<AbsExpFunction>();
  return nullptr;
}

} // namespace perspcone
