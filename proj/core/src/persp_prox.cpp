#include "perspcone/persp_prox.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace perspcone {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

} // namespace

PerspProxResult persp_prox(const ScalarConvexFunction& fn, double mu, double x,
                           double eta, const SolverConfig& cfg, double nu_hint) {
  if (!(mu > 0.0)) throw std::invalid_argument("persp_prox: mu must be positive");

  // eta + mu * f*(P_{cl dom f*}(x/mu)) decides the branch; it is also the
  // upper endpoint of the nu bracket on the interior branch. Equality routes
  // to the recession branch.
  const double upper = eta + fn.scaled_conjugate_at_dom(mu, x);
  if (!(upper > 0.0)) {
    PerspProxResult out;
    out.x = fn.prox_recession(mu, x);
    out.eta = 0.0;
    out.value = fn.recession(out.x);
    out.branch = ProxBranch::recession_branch;
    return out;
  }

  if (!std::isfinite(upper) ||
      mu < 1e-150 * std::max({1.0, std::abs(x), upper})) {
    // mu is below the resolution at which the prox differs representably from
    // the domain projection, which is its mu -> 0 limit. The floor also keeps
    // every downstream ratio against mu inside the double range.
    const auto [px, peta] = fn.project_dom_perspective(x, eta);
    PerspProxResult out;
    out.x = px;
    out.eta = peta;
    out.value = fn.perspective(px, peta);
    out.branch = peta > 0.0 ? ProxBranch::interior_branch : ProxBranch::recession_branch;
    if (peta > 0.0) out.nu = peta;
    return out;
  }

  const auto psi = [&](double nu) {
    return nu - eta - mu * fn.conjugate_at_prox_conjugate(nu / mu, x / mu);
  };

  // Floor of the open interval ]0, upper]; kept strictly inside the bracket
  // even when `upper` itself is tiny, and high enough that mu/nu stays
  // representable.
  double nu_floor = std::min(1e-12 * std::max(1.0, upper), 0.5 * upper);
  nu_floor = std::max(nu_floor, mu * 1e-290);
  if (nu_floor >= upper) {
    // The bracket collapsed onto the recession boundary.
    PerspProxResult out;
    out.x = fn.prox_recession(mu, x);
    out.eta = 0.0;
    out.value = fn.recession(out.x);
    out.branch = ProxBranch::recession_branch;
    return out;
  }
  PerspProxResult out;
  out.branch = ProxBranch::interior_branch;

  double nu = 0.0;
  const double psi_floor = psi(nu_floor);
  if (psi_floor > 0.0) {
    // Solution collapsed onto the numerical floor of the open interval.
    nu = nu_floor;
  } else if (psi_floor == 0.0) {
    nu = nu_floor;
  } else {
    double lo = nu_floor, g_lo = psi_floor;
    double hi = upper, g_hi = psi(upper);
    out.inner_iterations = 2;
    if (g_hi <= 0.0) {
      // The exact value psi(upper) is >= 0; tolerate rounding at the endpoint.
      if (g_hi >= -1e-9 * std::max({1.0, std::abs(upper), std::abs(eta)})) {
        nu = hi;
      } else {
        char buf[192];
        std::snprintf(buf, sizeof(buf),
                      "persp_prox: no sign change on the certified nu bracket "
                      "(mu=%g, upper=%g, psi(upper)=%g); the function "
                      "implementation is inconsistent",
                      mu, upper, g_hi);
        throw InnerSolveFailed(buf);
      }
    } else {
      if (nu_hint > lo && nu_hint < hi) {
        const double g_hint = psi(nu_hint);
        ++out.inner_iterations;
        if (g_hint == 0.0) {
          lo = hi = nu_hint;
          g_lo = g_hi = 0.0;
        } else if (g_hint > 0.0) {
          hi = nu_hint;
          g_hi = g_hint;
        } else {
          lo = nu_hint;
          g_lo = g_hint;
        }
      }
      if (lo == hi) {
        nu = lo;
      } else {
        // The inner root is resolved to machine precision regardless of
        // tol_inner: the outer objective amplifies any slack in nu, and the
        // superlinear solver reaches the floor in a handful of extra steps.
        const double eps_inner =
            std::min(cfg.tol_inner,
                     2.0 * std::numeric_limits<double>::epsilon() * std::max(hi, 1.0));
        const RootResult rr = solve_root(psi, Bracket{lo, hi, g_lo, g_hi},
                                         eps_inner, cfg.method, cfg.max_iterations);
        nu = rr.root;
        out.inner_iterations += rr.iterations;
      }
    }
  }

  const double t = fn.prox(mu / nu, x / nu);
  out.x = nu * t;
  out.eta = nu;
  out.nu = nu;
  out.value = nu * fn.value_at_prox(mu / nu, x / nu);
  return out;
}

RadialPerspProxResult persp_prox_radial(const ScalarConvexFunction& phi, double mu,
                                        std::span<const double> x, double eta,
                                        const SolverConfig& cfg) {
  if (!phi.radial_capable())
    throw std::invalid_argument("persp_prox_radial: function is not even with full domain");

  const double r = norm2(x);
  const PerspProxResult scalar = persp_prox(phi, mu, r, eta, cfg);

  RadialPerspProxResult out;
  out.eta = scalar.eta;
  out.value = scalar.value;
  out.nu = scalar.nu;
  out.branch = scalar.branch;
  out.inner_iterations = scalar.inner_iterations;
  out.x.assign(x.begin(), x.end());
  const double scale = r > 0.0 ? scalar.x / r : 0.0;
  for (double& c : out.x) c *= scale;
  return out;
}

} // namespace perspcone
